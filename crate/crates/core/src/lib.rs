pub mod bredon;
pub mod burnside;
pub mod categories;
pub mod chain;
pub mod coeff;
pub mod constant;
pub mod context;
pub mod groups;
pub mod kan;
pub mod linalg;
pub mod mackey;
pub mod orbit;
pub mod report;
