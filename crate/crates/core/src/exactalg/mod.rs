//! Exact graded linear algebra over the integers.
//!
//! Free modules on labeled generators, sparse chains and maps between them,
//! and integer homology through Smith normal form. All arithmetic is done in
//! `i64` with overflow detection; an overflow aborts the computation with
//! [`AlgebraError::Overflow`] instead of wrapping.

mod chain;
mod homology;
mod json;
mod map;
mod matrix;
mod module;
mod snf;

pub use chain::{Chain, Coeff};
pub use homology::{graded_homology, homology, HomologyBasis, HomologyClass, HomologySummary};
pub use json::{ModuleBundle, ModuleFile};
pub use map::SparseMap;
pub use matrix::IntMatrix;
pub use module::{Generator, GradedModule};
pub use snf::{smith_normal_form, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator `{0}` is not in the module")]
    UnknownGenerator(String),
    #[error("duplicate generator label `{0}`")]
    DuplicateGenerator(String),
    #[error("module mismatch: {0}")]
    ModuleMismatch(String),
    #[error("entry for `{source_label}` has image term `{target}` of degree {found}, expected {expected}")]
    DegreeMismatch { source_label: String, target: String, expected: i64, found: i64 },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("composite of differentials is nonzero on `{witness}`")]
    NotAComplex { witness: String, image: Chain },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("malformed module file: {0}")]
    Malformed(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

pub fn checked_add(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_add(b).ok_or(AlgebraError::Overflow)
}

pub fn checked_mul(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_mul(b).ok_or(AlgebraError::Overflow)
}
