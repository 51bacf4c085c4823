use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::input::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never affects the exit code.
    Diagnostic,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: Value,
    /// Only recorded with `--timings`, so that reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.status != Status::Fail);
        Self { schema_version: SCHEMA_VERSION, suite: suite.into(), seed, passed, checks }
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Collects checks, optionally timing each one.
#[derive(Debug)]
pub struct Recorder {
    timings: bool,
    checks: Vec<Check>,
}

impl Recorder {
    pub fn new(timings: bool) -> Self {
        Self { timings, checks: Vec::new() }
    }

    pub fn run(&mut self, id: &str, f: impl FnOnce() -> Result<(Status, Value), CliError>) -> Result<(), CliError> {
        let start = Instant::now();
        let (status, witness) = f()?;
        let wall_time_ms = self.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        self.checks.push(Check { id: id.into(), status, witness, wall_time_ms });
        Ok(())
    }

    pub fn extend(&mut self, other: Recorder) {
        self.checks.extend(other.checks);
    }

    pub fn finish(self, suite: &str, seed: u64) -> VerificationReport {
        VerificationReport::new(suite, seed, self.checks)
    }
}
