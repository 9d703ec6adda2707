//! Line-oriented text formats.
//!
//! Instances:
//!
//! ```text
//! # comment lines start with '#'
//! p wmesc <n> <m>
//! s <weight> <e1> <e2> ...      (exactly m lines)
//! ```
//!
//! Packing instances use `p pack <n> <m>` and `s <e1> <e2> ...`.
//!
//! Solutions are `w <weight>` followed by `s <i1> <i2> ...`, or the single
//! line `no-solution`.

use std::fmt::Write as _;

use thiserror::Error;
use wmesc_core::reduction::PackingInstance;
use wmesc_core::{Instance, Outcome, MAX_ELEMENTS, MAX_SETS};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is a missing line at end of input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `p {0} <n> <m>`")]
    BadHeader(&'static str),
    #[error("header appears more than once")]
    DuplicateHeader,
    #[error("missing header")]
    MissingHeader,
    #[error("expected a set line starting with `s`")]
    BadSetLine,
    #[error("cannot parse {0:?} as a number")]
    BadNumber(String),
    #[error("weight {0} is negative or not finite")]
    BadWeight(f64),
    #[error("element id {element} is out of range (n = {n})")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("element id {0} is repeated")]
    RepeatedElement(usize),
    #[error("header declares {declared} sets but {found} were given")]
    CountMismatch { declared: usize, found: usize },
    #[error("{what} count {got} exceeds the limit {limit}")]
    Capacity { what: &'static str, got: usize, limit: usize },
    #[error("{0}")]
    Invalid(String),
}

struct Body<'a> {
    n: usize,
    m: usize,
    header_line: usize,
    rows: Vec<(usize, Vec<&'a str>)>,
}

/// Splits into header and `s` rows, skipping comments and blank lines.
fn split<'a>(text: &'a str, tag: &'static str) -> Result<Body<'a>, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let err = |kind| ParseError { line, kind };
        if fields[0] == "p" {
            if header.is_some() {
                return Err(err(ParseErrorKind::DuplicateHeader));
            }
            if fields.len() != 4 || fields[1] != tag {
                return Err(err(ParseErrorKind::BadHeader(tag)));
            }
            let n = number(fields[2], line)?;
            let m = number(fields[3], line)?;
            if n > MAX_ELEMENTS {
                return Err(err(ParseErrorKind::Capacity {
                    what: "element",
                    got: n,
                    limit: MAX_ELEMENTS,
                }));
            }
            if m > MAX_SETS {
                return Err(err(ParseErrorKind::Capacity {
                    what: "set",
                    got: m,
                    limit: MAX_SETS,
                }));
            }
            header = Some((n, m, line));
            continue;
        }
        if header.is_none() {
            return Err(err(ParseErrorKind::MissingHeader));
        }
        if fields[0] != "s" {
            return Err(err(ParseErrorKind::BadSetLine));
        }
        rows.push((line, fields[1..].to_vec()));
    }
    let (n, m, header_line) = header.ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::MissingHeader,
    })?;
    if rows.len() != m {
        let line = rows.get(m).map_or(0, |r| r.0);
        return Err(ParseError {
            line,
            kind: ParseErrorKind::CountMismatch {
                declared: m,
                found: rows.len(),
            },
        });
    }
    Ok(Body { n, m, header_line, rows })
}

fn number(field: &str, line: usize) -> Result<usize, ParseError> {
    field.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadNumber(field.to_string()),
    })
}

fn elements(fields: &[&str], n: usize, line: usize) -> Result<Vec<usize>, ParseError> {
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(fields.len());
    for f in fields {
        let e = number(f, line)?;
        if e >= n {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::ElementOutOfRange { element: e, n },
            });
        }
        if seen[e] {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::RepeatedElement(e),
            });
        }
        seen[e] = true;
        out.push(e);
    }
    Ok(out)
}

/// Parses an instance. The result is validated but not normalized.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let body = split(text, "wmesc")?;
    let mut sets = Vec::with_capacity(body.m);
    let mut weights = Vec::with_capacity(body.m);
    for (line, fields) in &body.rows {
        let Some((w, rest)) = fields.split_first() else {
            return Err(ParseError {
                line: *line,
                kind: ParseErrorKind::BadSetLine,
            });
        };
        let weight: f64 = w.parse().map_err(|_| ParseError {
            line: *line,
            kind: ParseErrorKind::BadNumber(w.to_string()),
        })?;
        if !weight.is_finite() || weight.is_sign_negative() {
            return Err(ParseError {
                line: *line,
                kind: ParseErrorKind::BadWeight(weight),
            });
        }
        weights.push(weight);
        sets.push(elements(rest, body.n, *line)?);
    }
    Instance::new(body.n, &sets, weights).map_err(|e| ParseError {
        line: body.header_line,
        kind: ParseErrorKind::Invalid(e.to_string()),
    })
}

/// Canonical text of an instance: elements ascending, weights in shortest
/// round-trip decimal form.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = format!("p wmesc {} {}\n", inst.n(), inst.m());
    for (set, w) in inst.sets().iter().zip(inst.weights()) {
        write!(out, "s {w}").unwrap();
        for e in set.ones() {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a packing instance, dropping elements no set uses. Returns the
/// instance and the original id of each kept element.
pub fn parse_packing(text: &str) -> Result<(PackingInstance, Vec<usize>), ParseError> {
    let body = split(text, "pack")?;
    let mut sets = Vec::with_capacity(body.m);
    for (line, fields) in &body.rows {
        sets.push(elements(fields, body.n, *line)?);
    }
    PackingInstance::compact(body.n, sets).map_err(|e| ParseError {
        line: body.header_line,
        kind: ParseErrorKind::Invalid(e.to_string()),
    })
}

pub fn serialize_packing(pack: &PackingInstance) -> String {
    let mut out = format!("p pack {} {}\n", pack.n(), pack.m());
    for set in pack.sets() {
        out.push('s');
        for e in set {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Fixed-point text with 9 significant digits, e.g. `1.50000000`.
/// Values of 10^9 and above print as integers.
pub fn format_weight(w: f64) -> String {
    if w == 0.0 {
        return "0.00000000".to_string();
    }
    // the exponent after rounding to 9 digits decides the decimal count
    let sci = format!("{w:.8e}");
    let exp: i32 = sci.rsplit('e').next().unwrap().parse().unwrap();
    let decimals = (8 - exp).max(0) as usize;
    format!("{w:.decimals$}")
}

fn index_line(tag: &str, idx: &[usize]) -> String {
    let mut line = tag.to_string();
    for i in idx {
        write!(line, " {i}").unwrap();
    }
    line
}

/// Solution text, newline-terminated.
pub fn format_outcome(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Cover { chosen, weight } => {
            format!("w {}\n{}\n", format_weight(*weight), index_line("s", chosen))
        }
        Outcome::NoSolution => "no-solution\n".to_string(),
    }
}

/// Packing result text: `size <k>` then `s <i1> ...`.
pub fn format_packing(picked: &[usize]) -> String {
    format!("size {}\n{}\n", picked.len(), index_line("s", picked))
}
