//! Boundary strata of the compactified moduli spaces `R̄_d` (Stasheff
//! associahedra) and `Z̄_{2d}` (upper half-planes with `2d` boundary marked
//! points in fixed gap ratios), with formal boundary bookkeeping for the
//! fundamental chains of the half-plane moduli.

mod correspondence;
mod dot;
mod formal;
mod parity;
mod stasheff;
mod zspace;

pub use correspondence::{weights, z_to_stasheff, LeafWeight, StasheffCorrespondence};
pub use dot::{hasse_dot, hasse_levels};
pub use formal::{
    boundary_formal, check_formal_mod2, formal_symbols, open_formal, signed_residues, FormalChain, FormalMod2Report, FormalTree, Piece,
    ResidueRow, ResidueTable,
};
pub use parity::{LinearForm, ParityPoly};
pub use stasheff::{codim1_r, stasheff_strata, PlanarTree, RFacet};
pub use zspace::{check_mod2_z, codim1_z, open_z, strata_z, Mod2Report, Segment, StratumTree, ZFacet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("d must be at least {min}, got {d}")]
    TooSmall { d: usize, min: usize },
    #[error("no degree assigned to symbol `{0}`")]
    Unassigned(String),
    #[error("malformed stratum: {0}")]
    Malformed(String),
}

pub type Result<T, E = StrataError> = std::result::Result<T, E>;

/// `dim Z_{2d} = 2d − (d − 1) − 2 = d − 1`.
pub fn dim_z(d: usize) -> Result<usize> {
    if d < 1 {
        return Err(StrataError::TooSmall { d, min: 1 });
    }
    Ok(d - 1)
}

/// `dim R_d = d − 2` for discs with `d` inputs and one output.
pub fn dim_r(d: usize) -> Result<usize> {
    if d < 2 {
        return Err(StrataError::TooSmall { d, min: 2 });
    }
    Ok(d - 2)
}

/// Ordered partitions of `n` items into `r ≥ min_blocks` consecutive
/// nonempty blocks, as block sizes.
pub(crate) fn compositions(n: usize, min_blocks: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    // a composition of n is a subset of the n − 1 cut points
    for mask in 0u64..(1 << (n - 1)) {
        let mut sizes = Vec::new();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                sizes.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        sizes.push(run);
        if sizes.len() >= min_blocks {
            out.push(sizes);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(dim_z(1).unwrap(), 0);
        assert_eq!(dim_z(2).unwrap(), 1);
        assert_eq!(dim_z(5).unwrap(), 4);
        assert!(dim_z(0).is_err());
    }

    #[test]
    fn composition_counts() {
        for n in 1..8 {
            assert_eq!(compositions(n, 1).len(), 1 << (n - 1));
            assert_eq!(compositions(n, 2).len(), (1 << (n - 1)) - 1);
        }
    }
}
