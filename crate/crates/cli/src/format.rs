//! Line-oriented workspace text: a header, then declarations `kind name` with indented entries.
//!
//! ```text
//! mackey-workspace 1
//!
//! # comments attach to the next declaration
//! complex X
//!   group G
//!   cells 0 S
//!   boundary 1 2x1
//!     -1
//!     1
//! ```
//!
//! An entry whose last token is `RxC` is followed by `R` rows of `C` integers, unless `R` or
//! `C` is zero.

use std::fmt::Write as _;

use mackey_core::linalg::{Int, IntMatrix};

use crate::error::CliError;

pub const HEADER: &str = "mackey-workspace";
pub const VERSION: u32 = 1;
pub const KINDS: [&str; 7] = ["group", "gset", "module", "complex", "zgcomplex", "mackey", "coeff"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub decls: Vec<Decl>,
    /// Comments after the last declaration.
    pub trailing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub comments: Vec<String>,
    pub kind: String,
    pub name: String,
    pub line: usize,
    pub body: Vec<BodyLine>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BodyLine {
    Comment(String),
    Entry(Entry),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub keyword: String,
    pub args: Vec<String>,
    pub matrix: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Int>>,
}

impl Matrix {
    pub fn from_int_matrix(m: &IntMatrix) -> Self {
        Matrix { rows: m.rows(), cols: m.cols(), entries: (0..m.rows()).map(|i| m.row_vec(i)).collect() }
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        if self.rows == 0 || self.cols == 0 {
            return IntMatrix::zeros(self.rows, self.cols);
        }
        IntMatrix::from_rows(&self.entries, self.cols)
    }
}

impl Entry {
    pub fn new(keyword: &str, args: Vec<String>, matrix: Option<Matrix>) -> Self {
        Entry { line: 0, keyword: keyword.to_string(), args, matrix }
    }
}

impl Decl {
    pub fn new(kind: &str, name: &str) -> Self {
        Decl { comments: Vec::new(), kind: kind.to_string(), name: name.to_string(), line: 0, body: Vec::new() }
    }

    pub fn push(&mut self, e: Entry) {
        self.body.push(BodyLine::Entry(e));
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.body.iter().filter_map(|b| match b {
            BodyLine::Entry(e) => Some(e),
            BodyLine::Comment(_) => None,
        })
    }
}

fn matrix_shape(tok: &str) -> Option<(usize, usize)> {
    let (r, c) = tok.split_once('x')?;
    if r.is_empty() || c.is_empty() || !r.bytes().all(|b| b.is_ascii_digit()) || !c.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((r.parse().ok()?, c.parse().ok()?))
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || "_-.:".contains(c))
}

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<Document, CliError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() && lines[i].trim().is_empty() {
        i += 1;
    }
    let header = lines.get(i).map(|l| l.trim()).unwrap_or("");
    let version = match header.split_whitespace().collect::<Vec<_>>()[..] {
        [HEADER, v] => v.parse::<u32>().map_err(|_| parse_err(i + 1, format!("bad version '{v}'")))?,
        _ => return Err(parse_err(i + 1, format!("expected '{HEADER} {VERSION}'"))),
    };
    if version != VERSION {
        return Err(parse_err(i + 1, format!("unsupported version {version}")));
    }
    i += 1;

    let mut decls: Vec<Decl> = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    while i < lines.len() {
        let raw = lines[i].trim_end();
        let lineno = i + 1;
        i += 1;
        if raw.trim().is_empty() {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        let text = raw.trim();
        if !indented {
            if text.starts_with('#') {
                pending.push(text.to_string());
                continue;
            }
            let toks: Vec<&str> = text.split_whitespace().collect();
            let [kind, name] = toks[..] else {
                return Err(parse_err(lineno, "a declaration is 'kind name'"));
            };
            if !KINDS.contains(&kind) {
                return Err(parse_err(lineno, format!("unknown declaration kind '{kind}'")));
            }
            if !valid_name(name) {
                return Err(parse_err(lineno, format!("invalid name '{name}'")));
            }
            decls.push(Decl { comments: std::mem::take(&mut pending), kind: kind.into(), name: name.into(), line: lineno, body: Vec::new() });
            continue;
        }
        let Some(decl) = decls.last_mut() else {
            return Err(parse_err(lineno, "indented line outside a declaration"));
        };
        if !pending.is_empty() {
            return Err(parse_err(lineno, "indented line after a top-level comment"));
        }
        if text.starts_with('#') {
            decl.body.push(BodyLine::Comment(text.to_string()));
            continue;
        }
        let mut args: Vec<String> = text.split_whitespace().map(str::to_string).collect();
        let keyword = args.remove(0);
        let mut matrix = None;
        if let Some((rows, cols)) = args.last().and_then(|t| matrix_shape(t)) {
            args.pop();
            let mut entries = Vec::new();
            if rows > 0 && cols > 0 {
                for r in 0..rows {
                    let Some(row) = lines.get(i) else {
                        return Err(parse_err(i, format!("matrix ends after {r} of {rows} rows")));
                    };
                    if !(row.starts_with(' ') || row.starts_with('\t')) || row.trim().is_empty() {
                        return Err(parse_err(i + 1, format!("expected matrix row {} of {rows}", r + 1)));
                    }
                    let vals = row
                        .split_whitespace()
                        .map(|t| t.parse::<Int>().map_err(|_| parse_err(i + 1, format!("'{t}' is not an integer"))))
                        .collect::<Result<Vec<Int>, _>>()?;
                    if vals.len() != cols {
                        return Err(parse_err(i + 1, format!("row has {} entries, expected {cols}", vals.len())));
                    }
                    entries.push(vals);
                    i += 1;
                }
            }
            matrix = Some(Matrix { rows, cols, entries });
        }
        decl.body.push(BodyLine::Entry(Entry { line: lineno, keyword, args, matrix }));
    }
    Ok(Document { decls, trailing: pending })
}

fn write_entry(out: &mut String, e: &Entry) {
    out.push_str("  ");
    out.push_str(&e.keyword);
    for a in &e.args {
        out.push(' ');
        out.push_str(a);
    }
    if let Some(m) = &e.matrix {
        let _ = write!(out, " {}x{}", m.rows, m.cols);
        out.push('\n');
        if m.rows > 0 && m.cols > 0 {
            for row in &m.entries {
                out.push_str("    ");
                out.push_str(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
                out.push('\n');
            }
        }
    } else {
        out.push('\n');
    }
}

pub fn write_decl(out: &mut String, d: &Decl) {
    for c in &d.comments {
        out.push_str(c);
        out.push('\n');
    }
    let _ = writeln!(out, "{} {}", d.kind, d.name);
    for b in &d.body {
        match b {
            BodyLine::Comment(c) => {
                out.push_str("  ");
                out.push_str(c);
                out.push('\n');
            }
            BodyLine::Entry(e) => write_entry(out, e),
        }
    }
}

/// Canonical text: one blank line between blocks, two-space entries, four-space matrix rows.
pub fn serialize(doc: &Document) -> String {
    let mut out = format!("{HEADER} {VERSION}\n");
    for d in &doc.decls {
        out.push('\n');
        write_decl(&mut out, d);
    }
    if !doc.trailing.is_empty() {
        out.push('\n');
        for c in &doc.trailing {
            out.push_str(c);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "mackey-workspace 1

# the sign sphere
complex X
  group G
  # two fixed points
  cells 0 P
  boundary 1 2x1
    -1
    1
  empty 0x3

# end
";

    #[test]
    fn canonical_text_round_trips() {
        let doc = parse(SAMPLE).unwrap();
        assert_eq!(doc.decls.len(), 1);
        let d = &doc.decls[0];
        assert_eq!(d.comments, vec!["# the sign sphere".to_string()]);
        let e: Vec<&Entry> = d.entries().collect();
        assert_eq!(e[2].matrix.as_ref().unwrap().entries, vec![vec![Int::from(-1)], vec![Int::ONE]]);
        assert_eq!(e[3].matrix.as_ref().unwrap().rows, 0);
        assert_eq!(serialize(&doc), SAMPLE);
    }

    #[test]
    fn loose_spacing_is_normalized() {
        let loose = "\nmackey-workspace   1\n\n\ngroup G\n      builtin    Z2\n\n\n\ngroup H\n\tbuiltin Z3\n";
        let doc = parse(loose).unwrap();
        assert_eq!(serialize(&doc), "mackey-workspace 1\n\ngroup G\n  builtin Z2\n\ngroup H\n  builtin Z3\n");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("mackey 1\n", 1),
            ("mackey-workspace 2\n", 1),
            ("mackey-workspace 1\n  builtin Z2\n", 2),
            ("mackey-workspace 1\nwidget W\n", 2),
            ("mackey-workspace 1\ngroup G extra\n", 2),
            ("mackey-workspace 1\ngroup G\n  table 2x2\n    0 1\n", 4),
            ("mackey-workspace 1\ngroup G\n  table 2x2\n    0 1\n    1 z\n", 5),
            ("mackey-workspace 1\ngroup G\n  table 2x2\n    0 1\n    1\n", 5),
        ];
        for (text, line) in cases {
            match parse(text) {
                Err(CliError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn matrix_shapes() {
        assert_eq!(matrix_shape("2x3"), Some((2, 3)));
        assert_eq!(matrix_shape("0x0"), Some((0, 0)));
        assert_eq!(matrix_shape("Z2xZ2"), None);
        assert_eq!(matrix_shape("x3"), None);
    }
}
