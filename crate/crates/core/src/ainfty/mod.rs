//! A∞ categories with sparse structure constants, and checkers for the A∞
//! relations and A∞ functor equations.
//!
//! Inputs are always written in the order `x_d, …, x_1` with `x_1` the first
//! morphism to be applied, so `μ_d(x_d, …, x_1) ∈ hom(X_0, X_d)` when
//! `x_j ∈ hom(X_{j-1}, X_j)`. Degrees are cohomological and `μ_d` has degree
//! `2 − d`.

mod category;
mod check;
pub mod fixtures;
mod functor;
mod homology;
mod json;
mod signs;
mod transfer;

pub use category::{AInftyCategory, MorphismGenerator, StructureConstant};
pub use check::{check_ainfty, check_relation, relation_terms, AInftyReport, RelationFailure, RelationTerm};
pub use functor::{check_functor, AInftyFunctorData, Convention, FunctorFailure, FunctorReport};
pub use homology::{chain_associativity, homology_product, AssociativityFailure, ClassRef, HomGroup, HomologyProductTable, ProductEntry};
pub use json::{CategoryFile, FunctorFile, GeneratorDecl, OperationDecl};
pub use signs::{dagger, maltese, sign_of};
pub use transfer::{transfer, HomRetract, Retract, TransferResult};

use thiserror::Error;

use crate::exactalg::AlgebraError;

/// Payload of [`AInftyError::WrongHom`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("output term `{label}` of {inputs:?} lies in hom({found_source}, {found_target}), expected hom({source_obj}, {target_obj})")]
pub struct HomMismatch {
    pub inputs: Vec<String>,
    pub label: String,
    pub source_obj: String,
    pub target_obj: String,
    pub found_source: String,
    pub found_target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AInftyError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate morphism generator `{0}`")]
    DuplicateGenerator(String),
    #[error("inputs {0:?} are not composable")]
    NotComposable(Vec<String>),
    #[error("operation with no inputs")]
    EmptyOperation,
    #[error("{0}")]
    WrongHom(Box<HomMismatch>),
    #[error("degree rule violated for {inputs:?}: output term `{label}` has degree {found}, expected {expected}")]
    DegreeRule { inputs: Vec<String>, label: String, expected: i64, found: i64 },
    #[error("object map does not cover `{0}`")]
    MissingObject(String),
    #[error("invalid retract on hom({source_obj}, {target_obj}): {reason}")]
    Retract { source_obj: String, target_obj: String, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed category file: {0}")]
    Malformed(String),
}

pub type Result<T, E = AInftyError> = std::result::Result<T, E>;
