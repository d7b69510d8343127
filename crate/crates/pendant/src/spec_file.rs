//! Pattern files.
//!
//! ```json
//! {"dim": 1, "r": 4, "pendants": [1, 3]}
//! {"dim": 2, "lattice": [[2, 0], [1, 1]], "pendants": [[0, 0]]}
//! ```
//!
//! 1D positions are 1-based; 2D pendants are residues modulo the lattice.

use std::fmt;
use std::path::{Path, PathBuf};

use pendant_core::{PendantSpec1D, PendantSpec2D};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecFile {
    OneD(PendantSpec1D),
    TwoD(PendantSpec2D),
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl SpecError {
    fn field(field: impl Into<String>, message: impl fmt::Display) -> Self {
        SpecError::Field { field: field.into(), message: message.to_string() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    dim: Value,
    #[serde(default)]
    r: Option<Value>,
    #[serde(default)]
    lattice: Option<Value>,
    pendants: Vec<Value>,
}

fn as_int(v: &Value, field: &str) -> Result<i64, SpecError> {
    v.as_i64().ok_or_else(|| SpecError::field(field, format!("expected an integer, found {v}")))
}

fn as_pair(v: &Value, field: &str) -> Result<[i64; 2], SpecError> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok([as_int(a, &format!("{field}[0]"))?, as_int(b, &format!("{field}[1]"))?]),
        _ => Err(SpecError::field(field, format!("expected a pair of integers, found {v}"))),
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    match as_int(&raw.dim, "dim")? {
        1 => {
            if raw.lattice.is_some() {
                return Err(SpecError::field("lattice", "not allowed when dim is 1"));
            }
            let r = raw.r.as_ref().ok_or_else(|| SpecError::field("r", "missing"))?;
            let r = as_int(r, "r")?;
            if r < 1 {
                return Err(SpecError::field("r", format!("period {r} must be at least 1")));
            }
            let mut positions = Vec::with_capacity(raw.pendants.len());
            for (i, v) in raw.pendants.iter().enumerate() {
                let field = format!("pendants[{i}]");
                let p = as_int(v, &field)?;
                if p < 1 || p > r {
                    return Err(SpecError::field(field, format!("position {p} outside 1..={r}")));
                }
                if positions.contains(&(p as usize)) {
                    return Err(SpecError::field(field, format!("duplicate position {p}")));
                }
                positions.push(p as usize);
            }
            PendantSpec1D::new(r as usize, positions)
                .map(SpecFile::OneD)
                .map_err(|e| SpecError::field("pendants", e))
        }
        2 => {
            if raw.r.is_some() {
                return Err(SpecError::field("r", "not allowed when dim is 2"));
            }
            let lattice = raw.lattice.as_ref().ok_or_else(|| SpecError::field("lattice", "missing"))?;
            let rows = match lattice.as_array().map(Vec::as_slice) {
                Some([a, b]) => [as_pair(a, "lattice[0]")?, as_pair(b, "lattice[1]")?],
                _ => return Err(SpecError::field("lattice", "expected two integer vectors")),
            };
            let residues = raw
                .pendants
                .iter()
                .enumerate()
                .map(|(i, v)| as_pair(v, &format!("pendants[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            PendantSpec2D::new(rows, residues)
                .map(SpecFile::TwoD)
                .map_err(|e| SpecError::field("lattice/pendants", e))
        }
        d => Err(SpecError::field("dim", format!("unsupported dimension {d} (expected 1 or 2)"))),
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_owned(),
        None => message.to_owned(),
    }
}

pub fn load_spec(path: &Path) -> Result<SpecFile, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| SpecError::Io { path: path.to_path_buf(), source })?;
    parse_spec(&text)
}

/// Serializable form of a pattern, in the same shape as the input files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecJson {
    OneD { dim: u8, r: usize, pendants: Vec<usize> },
    TwoD { dim: u8, lattice: [[i64; 2]; 2], pendants: Vec<[i64; 2]> },
}

impl From<&PendantSpec1D> for SpecJson {
    fn from(s: &PendantSpec1D) -> Self {
        SpecJson::OneD { dim: 1, r: s.period(), pendants: s.pendants().to_vec() }
    }
}

impl From<&PendantSpec2D> for SpecJson {
    fn from(s: &PendantSpec2D) -> Self {
        SpecJson::TwoD { dim: 2, lattice: s.lattice(), pendants: s.residues().to_vec() }
    }
}
