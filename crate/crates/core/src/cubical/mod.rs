//! Presented cubical sets and their normalized chain complexes.
//!
//! A presented cubical set lists finitely many nondegenerate cubes together
//! with their faces. A face is either another cube or a degenerate cell,
//! recorded as a lower-dimensional cube plus the coordinates it ignores.
//! Chains are taken modulo degenerate cells, so degenerate faces drop out of
//! the boundary.

mod build;
mod json;
mod product;
mod set;

pub use build::{cone, graph, standard_cube, torus};
pub use json::{CubicalFile, DegenerateSpec, Directions, FaceSpec};
pub use product::{cross, product, PRODUCT_SEPARATOR};
pub use set::{Cell, CubeSpec, CubicalChainComplex, CubicalReport, CubicalWitness, PresentedCubicalSet};

use thiserror::Error;

use crate::exactalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicalError {
    #[error("unknown cube `{0}`")]
    UnknownCube(String),
    #[error("duplicate cube `{0}`")]
    DuplicateCube(String),
    #[error("cube `{cube}` is missing face ({k},{eps})")]
    MissingFace { cube: String, k: usize, eps: u8 },
    #[error("face ({k},{eps}) of `{cube}` has dimension {found}, expected {expected}")]
    FaceDimension { cube: String, k: usize, eps: u8, expected: usize, found: usize },
    #[error("face ({k},{eps}) of `{cube}`: {reason}")]
    BadDegeneracy { cube: String, k: usize, eps: u8, reason: String },
    #[error("face index ({k},{eps}) out of range for a {dim}-cube")]
    FaceIndex { k: usize, eps: u8, dim: usize },
    #[error("bad face key `{0}`, expected \"k,ε\"")]
    BadFaceKey(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed cubical fixture: {0}")]
    Malformed(String),
}

pub type Result<T, E = CubicalError> = std::result::Result<T, E>;
