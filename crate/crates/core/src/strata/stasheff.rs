use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Result, StrataError};

/// A rooted planar tree with leaves `1..d` in order and internal vertices of
/// arity at least 2; a stratum of `R̄_d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlanarTree {
    Leaf(usize),
    Vertex(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn corolla(d: usize) -> Self {
        PlanarTree::Vertex((1..=d).map(PlanarTree::Leaf).collect())
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            PlanarTree::Leaf(_) => 0,
            PlanarTree::Vertex(ch) => 1 + ch.iter().map(Self::internal_vertices).sum::<usize>(),
        }
    }

    pub fn codim(&self) -> usize {
        self.internal_vertices().saturating_sub(1)
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf(_) => 1,
            PlanarTree::Vertex(ch) => ch.iter().map(Self::leaves).sum(),
        }
    }

    /// Trees obtained by inserting one internal edge.
    pub fn facets(&self) -> Vec<PlanarTree> {
        let PlanarTree::Vertex(ch) = self else {
            return vec![];
        };
        let r = ch.len();
        let mut out = Vec::new();
        for s in 2..r {
            for i in 0..=r - s {
                let mut c = ch[..i].to_vec();
                c.push(PlanarTree::Vertex(ch[i..i + s].to_vec()));
                c.extend_from_slice(&ch[i + s..]);
                out.push(PlanarTree::Vertex(c));
            }
        }
        for (l, child) in ch.iter().enumerate() {
            for f in child.facets() {
                let mut c = ch.clone();
                c[l] = f;
                out.push(PlanarTree::Vertex(c));
            }
        }
        out
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf(i) => write!(f, "{i}"),
            PlanarTree::Vertex(ch) => {
                let s: Vec<String> = ch.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", s.join(" "))
            }
        }
    }
}

/// `R_{d_1} × R_{d_2}`: inputs `k+1..k+d_2` bubble off into a disc with
/// `d_2` inputs whose output is input `k+1` of a disc with `d_1` inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RFacet {
    pub d1: usize,
    pub d2: usize,
    pub k: usize,
    pub tree: PlanarTree,
}

/// All `(d_1, d_2, k)` with `d_1 + d_2 = d + 1`, `2 ≤ d_2 ≤ d − 1`,
/// `0 ≤ k ≤ d − d_2`.
pub fn codim1_r(d: usize) -> Result<Vec<RFacet>> {
    if d < 2 {
        return Err(StrataError::TooSmall { d, min: 2 });
    }
    let mut out = Vec::new();
    for d2 in 2..d {
        for k in 0..=d - d2 {
            let mut c: Vec<PlanarTree> = (1..=k).map(PlanarTree::Leaf).collect();
            c.push(PlanarTree::Vertex((k + 1..=k + d2).map(PlanarTree::Leaf).collect()));
            c.extend((k + d2 + 1..=d).map(PlanarTree::Leaf));
            out.push(RFacet { d1: d + 1 - d2, d2, k, tree: PlanarTree::Vertex(c) });
        }
    }
    Ok(out)
}

/// All strata of `R̄_d` by codimension.
pub fn stasheff_strata(d: usize) -> Result<Vec<BTreeSet<PlanarTree>>> {
    if d < 2 {
        return Err(StrataError::TooSmall { d, min: 2 });
    }
    let mut levels = vec![BTreeSet::from([PlanarTree::corolla(d)])];
    loop {
        let next: BTreeSet<PlanarTree> = levels.last().expect("nonempty").iter().flat_map(|t| t.facets()).collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert!(codim1_r(2).unwrap().is_empty());
        assert_eq!(codim1_r(3).unwrap().len(), 2);
        assert_eq!(codim1_r(4).unwrap().len(), 5);
        let levels = stasheff_strata(4).unwrap();
        assert_eq!(levels.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![1, 5, 5]);
    }

    #[test]
    fn facets_of_corolla_are_codim1() {
        for d in 2..=6 {
            let a: BTreeSet<_> = PlanarTree::corolla(d).facets().into_iter().collect();
            let b: BTreeSet<_> = codim1_r(d).unwrap().into_iter().map(|f| f.tree).collect();
            assert_eq!(a, b);
        }
    }
}
