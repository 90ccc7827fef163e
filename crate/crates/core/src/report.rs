//! Named pass/fail lines for verification batteries.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub holds: bool,
}

impl Check {
    pub fn new(label: impl Into<String>, holds: bool) -> Self {
        Check { label: label.into(), holds }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.holds { "ok" } else { "FAIL" }, self.label)
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}
