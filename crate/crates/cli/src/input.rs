use std::fs;
use std::path::Path;

use ainf_core::branes::LagrangianFrame;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::SCHEMA_VERSION;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {reason}")]
    Malformed { path: String, reason: String },
    #[error("{path}: schema_version {found} is not supported (expected {SCHEMA_VERSION})")]
    Schema { path: String, found: u32 },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Box<dyn std::error::Error + Send + Sync>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }

    pub fn malformed(path: &Path, reason: impl ToString) -> Self {
        CliError::Malformed { path: path.display().to_string(), reason: reason.to_string() }
    }
}

/// Converts any library error into a [`CliError`].
pub fn compute<E: std::error::Error + Send + Sync + 'static>(e: E) -> CliError {
    CliError::Compute(Box::new(e))
}

/// Every fixture file carries `schema_version` next to its payload.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Versioned<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Versioned<T> {
    pub fn new(body: T) -> Self {
        Self { schema_version: SCHEMA_VERSION, body }
    }
}

impl<T: Serialize> Versioned<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixtures serialize");
        s.push('\n');
        s
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_versioned<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    let raw: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::malformed(path, e))?;
    let found =
        raw.get("schema_version").and_then(|v| v.as_u64()).ok_or_else(|| CliError::malformed(path, "missing schema_version"))? as u32;
    if found != SCHEMA_VERSION {
        return Err(CliError::Schema { path: path.display().to_string(), found });
    }
    let v: Versioned<T> = serde_json::from_value(raw).map_err(|e| CliError::malformed(path, e))?;
    Ok(v.body)
}

/// A frame path: rows of `2n²` reals, `(re, im)` pairs of the basis matrix in
/// row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FramePathFile {
    pub rows: Vec<Vec<f64>>,
}

/// Reads frames from CSV (no header) or from versioned JSON.
pub fn load_frames(path: &Path) -> Result<Vec<LagrangianFrame>, CliError> {
    let rows: Vec<Vec<f64>> = if path.extension().is_some_and(|e| e == "csv") {
        let mut reader =
            csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_path(path).map_err(|e| CliError::malformed(path, e))?;
        let mut rows = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec.map_err(|e| CliError::malformed(path, e))?;
            let row = rec
                .iter()
                .map(|x| x.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::malformed(path, format!("row {}: {e}", i + 1)))?;
            rows.push(row);
        }
        rows
    } else {
        load_versioned::<FramePathFile>(path)?.rows
    };
    if rows.is_empty() {
        return Err(CliError::malformed(path, "no frames"));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| LagrangianFrame::from_row(r).map_err(|e| CliError::malformed(path, format!("row {}: {e}", i + 1))))
        .collect()
}

pub fn frames_to_csv(frames: &[LagrangianFrame]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for f in frames {
        w.write_record(f.to_row().iter().map(|x| format!("{x:.17e}"))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}
