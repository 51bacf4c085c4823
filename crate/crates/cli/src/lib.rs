//! Command-line plumbing for `ainf-core`: versioned fixture I/O, seeded
//! fixture generators, verification suites and reports.

pub mod fixtures;
pub mod input;
pub mod oracle;
pub mod report;
pub mod suites;

pub use input::{CliError, Versioned};
pub use report::{Check, Recorder, Status, VerificationReport, SCHEMA_VERSION};
pub use suites::Options;
