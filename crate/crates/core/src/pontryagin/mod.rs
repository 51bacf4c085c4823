//! The Pontryagin DG category of a combinatorial loop model.
//!
//! Paths in a digraph play the role of Moore paths. Declared squares (and
//! optionally higher cells) are homotopies between edge paths, and a cube of
//! the path space is a word in edges and cells; its dimension is the total
//! dimension of its cells. Concatenation of words is strictly associative.
//! Path length is capped, and products longer than the cap are set to zero,
//! which is a quotient by a DG ideal.

mod category;
mod digraph;
pub mod fixtures;
mod model;

pub use category::{
    check_associativity, check_dg_identity, perturbation_sweep, AssociativityReport, DgFailure, DgReport, PerturbationReport,
    PontryaginCategory, ThirdTermSign,
};
pub use digraph::{CellDecl, Digraph, DigraphFile, EdgeDecl, SquareDecl};
pub use model::{Letter, LoopModel, PathCube};

use thiserror::Error;

use crate::ainfty::AInftyError;
use crate::cubical::CubicalError;
use crate::exactalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PontryaginError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge or cell `{0}`")]
    UnknownLetter(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("invalid identifier `{0}`: must be nonempty and avoid `.`, `[`, `]`, `@`")]
    BadIdentifier(String),
    #[error("malformed square {index}: {reason}")]
    MalformedSquare { index: usize, reason: String },
    #[error("malformed cell `{id}`: {reason}")]
    MalformedCell { id: String, reason: String },
    #[error("`{0}` is not a cube of the loop model")]
    UnknownCube(String),
    #[error("`{second}` cannot follow `{first}`")]
    NotComposable { first: String, second: String },
    #[error("chain is not homogeneous")]
    Inhomogeneous,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error(transparent)]
    AInfty(#[from] AInftyError),
}

pub type Result<T, E = PontryaginError> = std::result::Result<T, E>;
