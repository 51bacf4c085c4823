//! Numerics for the C⁰ estimate: the mollifier and the cutoff `ψ`, the
//! moving boundary `σ_ε`, the auxiliary function `h_μ`, the Hamiltonian slope
//! profile `c(s)` and grid checks of the inequalities built from them.

mod mollifier;
mod profile;
mod quad;
mod spline;
mod verify;

pub use mollifier::{Mollifier, PsiTable, PSI_TABLE_POINTS};
pub use profile::{boundary_inequality, bracket, bracket_bound, bump, bump_f, bump_f_prime, BracketBound, HProfile, HamiltonianProfile};
pub use quad::adaptive_simpson;
pub use spline::{sigma_eps, NaturalSpline};
pub use verify::{verify_all, C0Check, C0Config, C0Report, CheckStatus};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum C0Error {
    #[error("need C > 2A and A ≥ 0, got C = {c}, A = {a}")]
    BadProfile { c: f64, a: f64 },
    #[error("ε = {0} is outside [0, 1]")]
    EpsOutOfRange(f64),
    #[error("spline needs at least 2 samples of equal dimension")]
    BadSamples,
    #[error("grid needs at least 2 points, got {0}")]
    BadGrid(usize),
}

pub type Result<T, E = C0Error> = std::result::Result<T, E>;
