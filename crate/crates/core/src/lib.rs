//! Exact-arithmetic workbench for A∞ structures arising from Floer theory on
//! moving Lagrangians.
//!
//! The crate is organised by subject:
//!
//! * [`exactalg`]: free graded ℤ-modules, sparse maps, Smith normal form, homology.
//! * [`cubical`]: presented cubical sets, the normalized cubical chain complex, cross products.
//! * [`pontryagin`]: combinatorial loop models and their DG path category.
//! * [`ainfty`]: A∞ categories and functors, relation checkers, homotopy transfer.
//! * [`strata`]: boundary strata of Stasheff and half-plane moduli spaces.
//! * [`branes`]: squared phases, Maslov winding, chord degrees, Pin torsors.
//! * [`c0bound`]: mollified bump functions and the maximum-principle inequalities.

pub mod ainfty;
pub mod branes;
pub mod c0bound;
pub mod cubical;
pub mod exactalg;
pub mod pontryagin;
pub mod strata;

pub use exactalg::{AlgebraError, Chain, Coeff, Generator, GradedModule, HomologySummary, SparseMap};
