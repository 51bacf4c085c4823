//! Brane data: squared phases of Lagrangian frames, phase lifts and Maslov
//! winding, chord degrees, and the torsor of Pin structures.

mod frame;
mod phase;
mod pin;

pub use frame::{LagrangianFrame, LAGRANGIAN_TOLERANCE};
pub use phase::{chord_degree, maslov_winding, rotating_line, PhasePath};
pub use pin::{PinTorsor, TorsorReport};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraneError {
    #[error("frame must be a square n×n matrix with n ≥ 1, got {rows}×{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("columns {i} and {j} are not ω-orthogonal: ω = {omega:e}")]
    NotLagrangian { i: usize, j: usize, omega: f64 },
    #[error("degenerate frame: |det| = {0:e}")]
    Degenerate(f64),
    #[error("volume form must be nonzero")]
    ZeroVolumeForm,
    #[error("sample {index} is not a unit complex number (|z| = {modulus})")]
    NotUnit { index: usize, modulus: f64 },
    #[error("lift jumps by {jump:.3} between samples {index} and {}; sample more densely", index + 1)]
    SamplingTooCoarse { index: usize, jump: f64 },
    #[error("path is not closed: endpoints differ by {0:e}")]
    NotClosed(f64),
    #[error("open path has non-integral lift difference {0}")]
    NonIntegral(f64),
    #[error("empty path")]
    Empty,
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("vector {0:?} is not in 𝔽_2^{1}")]
    BadVector(Vec<u8>, usize),
    #[error("malformed torsor: {0}")]
    MalformedTorsor(String),
    #[error("row {row}: {reason}")]
    BadRow { row: usize, reason: String },
}

pub type Result<T, E = BraneError> = std::result::Result<T, E>;
