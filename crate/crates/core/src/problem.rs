//! Plain-text problem files.
//!
//! ```text
//! # smooth conic
//! field: Fp 5
//! n: 2
//! d: 2        # optional
//! e: 1        # optional
//! polys:
//!   X0*X2 - X1^2
//! ```
//!
//! `field` is `Q` or `Fp <p>`. Relation lines follow `polys:` and are
//! indented; `#` starts a comment. Errors carry 1-based line and column.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::graded::ProblemSpec;
use crate::linalg::FieldSpec;
use crate::poly::{HomPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{origin}{line}:{col}: {msg}")]
pub struct ProblemFileError {
    pub origin: Origin,
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// File name prefix for error messages (empty for in-memory text).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Origin(pub Option<String>);

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(name) => write!(f, "{name}:"),
            None => Ok(()),
        }
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ProblemFileError {
    ProblemFileError {
        origin: Origin::default(),
        line,
        col,
        msg: msg.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a).trim_end()
}

fn parse_field(value: &str, line: usize, col: usize) -> Result<FieldSpec, ProblemFileError> {
    let mut words = value.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("Q"), None, _) => Ok(FieldSpec::Rationals),
        (Some("Fp"), Some(p), None) => {
            let p: u32 = p
                .parse()
                .map_err(|_| err(line, col, format!("bad characteristic {p:?}")))?;
            FieldSpec::prime(p).map_err(|e| err(line, col, e.to_string()))
        }
        _ => Err(err(
            line,
            col,
            format!("expected `Q` or `Fp <p>`, got {value:?}"),
        )),
    }
}

fn parse_number<T: std::str::FromStr>(
    value: &str,
    line: usize,
    col: usize,
) -> Result<T, ProblemFileError> {
    value.parse().map_err(|_| {
        err(
            line,
            col,
            format!("expected a non-negative integer, got {value:?}"),
        )
    })
}

/// Parses problem text into a validated spec.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, ProblemFileError> {
    let mut field = None;
    let mut n: Option<usize> = None;
    let mut d = None;
    let mut e = None;
    let mut polys: Vec<(usize, usize, String)> = Vec::new();
    let mut in_polys = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        if in_polys && indent > 0 {
            polys.push((line, indent + 1, body.trim().to_string()));
            continue;
        }
        in_polys = false;
        let (key, value) = body
            .split_once(':')
            .ok_or_else(|| err(line, indent + 1, "expected `key: value`"))?;
        let key_t = key.trim();
        let value_t = value.trim();
        let vcol = key.len() + 1 + (value.len() - value.trim_start().len()) + 1;
        let dup = |present: bool| {
            if present {
                Err(err(line, indent + 1, format!("duplicate key `{key_t}`")))
            } else {
                Ok(())
            }
        };
        match key_t {
            "field" => {
                dup(field.is_some())?;
                field = Some(parse_field(value_t, line, vcol)?);
            }
            "n" => {
                dup(n.is_some())?;
                n = Some(parse_number(value_t, line, vcol)?);
            }
            "d" => {
                dup(d.is_some())?;
                d = Some(parse_number(value_t, line, vcol)?);
            }
            "e" => {
                dup(e.is_some())?;
                e = Some(parse_number(value_t, line, vcol)?);
            }
            "polys" => {
                in_polys = true;
                if !value_t.is_empty() {
                    polys.push((line, vcol, value_t.to_string()));
                }
            }
            other => return Err(err(line, indent + 1, format!("unknown key `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let field = field.ok_or_else(|| err(last, 1, "missing `field`"))?;
    let n = n.ok_or_else(|| err(last, 1, "missing `n`"))?;
    let mut parsed = Vec::with_capacity(polys.len());
    for (line, col, src) in &polys {
        let f = HomPoly::parse(src, n, field).map_err(|e| {
            let at = match &e {
                PolyError::Syntax { pos, .. } | PolyError::VariableOutOfRange { pos, .. } => {
                    col + pos - 1
                }
                _ => *col,
            };
            err(*line, at, e.to_string())
        })?;
        parsed.push(f);
    }
    ProblemSpec::new(n, field, parsed, d, e).map_err(|e| {
        let line = polys.first().map_or(last, |p| p.0);
        err(line, 1, e.to_string())
    })
}

/// Reads and parses a problem file; errors are prefixed with the path.
pub fn load_problem(path: &Path) -> Result<ProblemSpec, ProblemFileError> {
    let origin = Origin(Some(path.display().to_string()));
    let text = std::fs::read_to_string(path).map_err(|e| ProblemFileError {
        origin: origin.clone(),
        line: 0,
        col: 0,
        msg: e.to_string(),
    })?;
    parse_problem(&text).map_err(|e| ProblemFileError { origin, ..e })
}

/// Problem files shipped with the crate, keyed by name.
pub const CATALOG: &[(&str, &str)] = &[
    ("p1", include_str!("../problems/p1.txt")),
    ("p2", include_str!("../problems/p2.txt")),
    ("conic", include_str!("../problems/conic.txt")),
    (
        "twisted_cubic",
        include_str!("../problems/twisted_cubic.txt"),
    ),
    ("fermat_cubic", include_str!("../problems/fermat_cubic.txt")),
    ("point_pair", include_str!("../problems/point_pair.txt")),
    ("point", include_str!("../problems/point.txt")),
    ("empty", include_str!("../problems/empty.txt")),
];

pub fn catalog(name: &str) -> Option<ProblemSpec> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_problem(text).expect("bundled problems parse"))
}
