//! Text formats for codes and projective systems.
//!
//! A matrix file is a header line `q k n` followed by `k` rows of `n`
//! space-separated element encodings. A system file is a JSON document:
//!
//! ```json
//! {
//!   "q": 3,
//!   "k": 2,
//!   "field_modulus": [],
//!   "points": [{ "coords": [0, 1], "mult": "1" }]
//! }
//! ```
//!
//! `field_modulus` lists the coefficients of the defining polynomial from the
//! constant term up, and is empty for prime fields. Multiplicities are decimal
//! strings. Writers are deterministic: points appear in canonical order.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::gf::{make_field, FieldSpec, GfError};
use crate::pg::{PgError, ProjectivePoint, ProjectiveSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{at}: value {value} is not an element of GF({q})")]
    EncodingOutOfRange { at: String, value: u64, q: u32 },
    #[error("point {index} {coords:?} is not in canonical form")]
    NonCanonicalPoint { index: usize, coords: Vec<u32> },
    #[error("field modulus {got:?} does not match the realization {expected:?}")]
    ModulusMismatch { expected: Vec<u32>, got: Vec<u32> },
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Pg(#[from] PgError),
}

type Result<T> = std::result::Result<T, IoError>;

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

fn number(line: usize, col: usize, tok: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| parse_err(line, col, format!("expected a non-negative integer, found {tok:?}")))
}

/// Serializes a generator matrix.
pub fn write_matrix(code: &LinearCode) -> String {
    let mut out = format!("{} {} {}\n", code.q(), code.k(), code.n());
    for row in code.generator() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a matrix file. Zero columns are allowed; rows must be independent.
pub fn read_matrix(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, 1, "missing header `q k n`"))?;
    let head: Vec<(usize, &str)> = tokens(header).collect();
    if head.len() != 3 {
        let col = head.get(3).map_or(header.len() + 1, |t| t.0);
        return Err(parse_err(hline, col, "header must be `q k n`"));
    }
    let q = number(hline, head[0].0, head[0].1)?;
    let k = number(hline, head[1].0, head[1].1)? as usize;
    let n = number(hline, head[2].0, head[2].1)? as usize;
    let field = make_field(q)?;
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(text.lines().count() + 1, 1, format!("expected {k} rows")))?;
        let mut row = Vec::with_capacity(n);
        for (col, tok) in tokens(line) {
            let v = number(lno, col, tok)?;
            if v >= q {
                return Err(IoError::EncodingOutOfRange {
                    at: format!("line {lno}, column {col}"),
                    value: v,
                    q: q as u32,
                });
            }
            row.push(v as u32);
        }
        if row.len() != n {
            return Err(parse_err(
                lno,
                line.len() + 1,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(parse_err(lno, 1, "unexpected content after the last row"));
    }
    Ok(LinearCode::new_degenerate(&field, n, rows)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    q: u32,
    k: usize,
    field_modulus: Vec<u32>,
    points: Vec<PointDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    coords: Vec<u32>,
    mult: String,
}

/// Serializes a projective system as pretty-printed JSON.
pub fn write_system(sys: &ProjectiveSystem) -> String {
    let doc = SystemDoc {
        q: sys.q(),
        k: sys.k(),
        field_modulus: sys.field().modulus().to_vec(),
        points: sys
            .support()
            .map(|(p, m)| PointDoc {
                coords: p.coords().to_vec(),
                mult: m.to_string(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    out.push('\n');
    out
}

/// Line and column of the first occurrence of `needle`, or `(1, 1)`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    text.lines()
        .enumerate()
        .find_map(|(i, l)| l.find(needle).map(|c| (i + 1, l[..c].chars().count() + 1)))
        .unwrap_or((1, 1))
}

/// Parses a system file.
pub fn read_system(text: &str) -> Result<ProjectiveSystem> {
    let doc: SystemDoc = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let field: FieldSpec = make_field(doc.q as u64)?;
    if doc.field_modulus != field.modulus() {
        return Err(IoError::ModulusMismatch {
            expected: field.modulus().to_vec(),
            got: doc.field_modulus,
        });
    }
    if doc.points.is_empty() {
        let (line, col) = locate(text, "\"points\"");
        return Err(parse_err(line, col, "points list is empty"));
    }
    let mut entries = Vec::with_capacity(doc.points.len());
    for (index, pt) in doc.points.into_iter().enumerate() {
        if pt.coords.len() != doc.k {
            return Err(PgError::DimensionMismatch {
                expected: doc.k,
                got: pt.coords.len(),
            }
            .into());
        }
        if let Some(&v) = pt.coords.iter().find(|&&v| v >= doc.q) {
            return Err(IoError::EncodingOutOfRange {
                at: format!("point {index}"),
                value: v as u64,
                q: doc.q,
            });
        }
        let coords = pt.coords;
        let point = ProjectivePoint::canonical(&field, coords.clone())
            .map_err(|_| IoError::NonCanonicalPoint { index, coords })?;
        let mult = if !pt.mult.is_empty() && pt.mult.bytes().all(|b| b.is_ascii_digit()) {
            BigUint::parse_bytes(pt.mult.as_bytes(), 10)
        } else {
            None
        };
        let mult = mult.ok_or_else(|| {
            let (line, col) = locate(text, &format!("\"{}\"", pt.mult));
            parse_err(
                line,
                col,
                format!("multiplicity {:?} is not a decimal integer", pt.mult),
            )
        })?;
        entries.push((point.into_coords(), mult));
    }
    Ok(ProjectiveSystem::new(&field, doc.k, entries)?)
}
