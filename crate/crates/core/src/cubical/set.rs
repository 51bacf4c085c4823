use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CubicalError, Result};
use crate::exactalg::{Chain, Generator, GradedModule, SparseMap};

/// A possibly degenerate cell: the cube `base` pulled back along the
/// projection that forgets the coordinates in `collapsed`.
///
/// Coordinates are 1-based in the cell's own dimension and kept sorted, so
/// the representation is a normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub base: String,
    pub collapsed: Vec<usize>,
}

impl Cell {
    pub fn cube(label: impl Into<String>) -> Self {
        Self { base: label.into(), collapsed: Vec::new() }
    }

    pub fn degenerate(label: impl Into<String>, mut collapsed: Vec<usize>) -> Self {
        collapsed.sort_unstable();
        Self { base: label.into(), collapsed }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.collapsed.is_empty()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.collapsed.is_empty() {
            write!(f, "{}", self.base)
        } else {
            let dirs: Vec<String> = self.collapsed.iter().map(|d| d.to_string()).collect();
            write!(f, "s[{}]({})", dirs.join(","), self.base)
        }
    }
}

/// One cube with its faces; `faces[k-1]` holds the faces at `(k,0)` and `(k,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSpec {
    pub label: String,
    pub dim: usize,
    pub faces: Vec<[Cell; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedCubicalSet {
    cubes: Vec<CubeSpec>,
    index: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CubicalWitness {
    FaceIdentity { cube: String, k: usize, l: usize, eps_k: u8, eps_l: u8, lhs: Cell, rhs: Cell },
    BoundarySquared { cube: String, image: Chain },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicalReport {
    pub passed: bool,
    pub cubes: usize,
    pub max_dim: usize,
    pub face_identities_checked: usize,
    pub witness: Option<CubicalWitness>,
}

/// Chains on nondegenerate cubes graded by dimension, with differential of
/// degree −1.
#[derive(Clone, Debug)]
pub struct CubicalChainComplex {
    pub module: Arc<GradedModule>,
    pub differential: SparseMap,
}

impl PresentedCubicalSet {
    /// Validates labels, face dimensions and degeneracy markers. Face
    /// identities are not enforced here; see [`Self::check_complex`].
    pub fn new(cubes: impl IntoIterator<Item = CubeSpec>) -> Result<Self> {
        let cubes: Vec<CubeSpec> = cubes.into_iter().collect();
        let mut index = BTreeMap::new();
        for (i, c) in cubes.iter().enumerate() {
            if index.insert(c.label.clone(), i).is_some() {
                return Err(CubicalError::DuplicateCube(c.label.clone()));
            }
        }
        let set = Self { cubes, index };
        for c in &set.cubes {
            if c.faces.len() < c.dim {
                return Err(CubicalError::MissingFace { cube: c.label.clone(), k: c.faces.len() + 1, eps: 0 });
            }
            if c.faces.len() > c.dim {
                return Err(CubicalError::FaceIndex { k: c.faces.len(), eps: 0, dim: c.dim });
            }
            for (k0, pair) in c.faces.iter().enumerate() {
                for (eps, cell) in pair.iter().enumerate() {
                    set.validate_face(c, k0 + 1, eps as u8, cell)?;
                }
            }
        }
        Ok(set)
    }

    fn validate_face(&self, c: &CubeSpec, k: usize, eps: u8, cell: &Cell) -> Result<()> {
        let bad = |reason: &str| CubicalError::BadDegeneracy { cube: c.label.clone(), k, eps, reason: reason.to_string() };
        let base_dim = self.dim(&cell.base)?;
        let found = base_dim + cell.collapsed.len();
        if found != c.dim - 1 {
            return Err(CubicalError::FaceDimension { cube: c.label.clone(), k, eps, expected: c.dim - 1, found });
        }
        if cell.collapsed.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("collapsed coordinates must be distinct and sorted"));
        }
        if cell.collapsed.iter().any(|&j| j == 0 || j > c.dim - 1) {
            return Err(bad("collapsed coordinate out of range"));
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Self { cubes: Vec::new(), index: BTreeMap::new() }
    }

    pub fn cubes(&self) -> &[CubeSpec] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn cube(&self, label: &str) -> Result<&CubeSpec> {
        self.index.get(label).map(|&i| &self.cubes[i]).ok_or_else(|| CubicalError::UnknownCube(label.to_string()))
    }

    pub fn dim(&self, label: &str) -> Result<usize> {
        Ok(self.cube(label)?.dim)
    }

    pub fn max_dim(&self) -> usize {
        self.cubes.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn cell_dim(&self, cell: &Cell) -> Result<usize> {
        Ok(self.dim(&cell.base)? + cell.collapsed.len())
    }

    /// `∂_{k,ε}` of a cube.
    pub fn face(&self, label: &str, k: usize, eps: u8) -> Result<Cell> {
        self.cell_face(&Cell::cube(label), k, eps)
    }

    /// `∂_{k,ε}` of an arbitrary cell.
    pub fn cell_face(&self, cell: &Cell, k: usize, eps: u8) -> Result<Cell> {
        let base = self.cube(&cell.base)?;
        let n = base.dim + cell.collapsed.len();
        if k == 0 || k > n || eps > 1 {
            return Err(CubicalError::FaceIndex { k, eps, dim: n });
        }
        let shift = |j: usize| if j > k { j - 1 } else { j };
        if cell.collapsed.contains(&k) {
            let collapsed = cell.collapsed.iter().filter(|&&j| j != k).map(|&j| shift(j)).collect();
            return Ok(Cell { base: cell.base.clone(), collapsed });
        }
        let before = cell.collapsed.iter().filter(|&&j| j < k).count();
        let f = &base.faces[k - before - 1][eps as usize];
        let mut collapsed: Vec<usize> = cell.collapsed.iter().map(|&j| shift(j)).collect();
        let free: Vec<usize> = (1..n).filter(|p| !collapsed.contains(p)).collect();
        collapsed.extend(f.collapsed.iter().map(|&q| free[q - 1]));
        Ok(Cell::degenerate(f.base.clone(), collapsed))
    }

    /// `∂σ = Σ_k Σ_ε (−1)^{k+ε} ∂_{k,ε}σ`, dropping degenerate faces.
    pub fn boundary(&self, label: &str) -> Result<Chain> {
        let c = self.cube(label)?;
        let mut out = Chain::zero();
        for (k0, pair) in c.faces.iter().enumerate() {
            for (eps, cell) in pair.iter().enumerate() {
                if !cell.is_degenerate() {
                    let sign = if (k0 + 1 + eps) % 2 == 0 { 1 } else { -1 };
                    out.add_term(cell.base.clone(), sign)?;
                }
            }
        }
        Ok(out)
    }

    pub fn boundary_chain(&self, chain: &Chain) -> Result<Chain> {
        let mut out = Chain::zero();
        for (label, c) in chain.iter() {
            out.add_scaled(&self.boundary(label)?, c)?;
        }
        Ok(out)
    }

    /// Checks every face identity `∂_{k,ε}∂_{l,ε′} = ∂_{l−1,ε′}∂_{k,ε}`
    /// (`k < l`) and `∂∂ = 0`, stopping at the first witness.
    pub fn check_complex(&self) -> Result<CubicalReport> {
        let mut checked = 0;
        let mut report =
            CubicalReport { passed: true, cubes: self.cubes.len(), max_dim: self.max_dim(), face_identities_checked: 0, witness: None };
        'outer: for c in &self.cubes {
            let sigma = Cell::cube(c.label.clone());
            for l in 2..=c.dim {
                for k in 1..l {
                    for eps_k in 0..2u8 {
                        for eps_l in 0..2u8 {
                            let lhs = self.cell_face(&self.cell_face(&sigma, l, eps_l)?, k, eps_k)?;
                            let rhs = self.cell_face(&self.cell_face(&sigma, k, eps_k)?, l - 1, eps_l)?;
                            checked += 1;
                            if lhs != rhs {
                                report.witness = Some(CubicalWitness::FaceIdentity { cube: c.label.clone(), k, l, eps_k, eps_l, lhs, rhs });
                                break 'outer;
                            }
                        }
                    }
                }
            }
            let dd = self.boundary_chain(&self.boundary(&c.label)?)?;
            if !dd.is_zero() {
                report.witness = Some(CubicalWitness::BoundarySquared { cube: c.label.clone(), image: dd });
                break;
            }
        }
        report.face_identities_checked = checked;
        report.passed = report.witness.is_none();
        Ok(report)
    }

    pub fn chain_complex(&self) -> Result<CubicalChainComplex> {
        let module = Arc::new(GradedModule::new(self.cubes.iter().map(|c| Generator::new(c.label.clone(), c.dim as i64)))?);
        let entries = self.cubes.iter().map(|c| Ok((c.label.clone(), self.boundary(&c.label)?))).collect::<Result<Vec<_>>>()?;
        let differential = SparseMap::new("∂", module.clone(), module.clone(), -1, entries)?;
        Ok(CubicalChainComplex { module, differential })
    }
}

impl CubicalChainComplex {
    pub fn homology(&self, degree: i64) -> Result<crate::exactalg::HomologySummary> {
        Ok(crate::exactalg::graded_homology(&self.differential, degree)?)
    }

    /// Betti numbers in degrees `0..=max`.
    pub fn betti(&self, max: usize) -> Result<Vec<usize>> {
        (0..=max as i64).map(|d| Ok(self.homology(d)?.rank)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> PresentedCubicalSet {
        PresentedCubicalSet::new([
            CubeSpec { label: "a".into(), dim: 0, faces: vec![] },
            CubeSpec { label: "b".into(), dim: 0, faces: vec![] },
            CubeSpec { label: "s".into(), dim: 1, faces: vec![[Cell::cube("a"), Cell::cube("b")]] },
        ])
        .unwrap()
    }

    #[test]
    fn interval_boundary() {
        let x = interval();
        assert_eq!(x.boundary("s").unwrap(), Chain::from_terms([("a", -1), ("b", 1)]).unwrap());
        assert!(x.boundary("a").unwrap().is_zero());
    }

    #[test]
    fn square_boundary_signs() {
        let mut cubes = vec![CubeSpec { label: "v".into(), dim: 0, faces: vec![] }];
        for e in ["p", "q", "r", "s"] {
            cubes.push(CubeSpec { label: e.into(), dim: 1, faces: vec![[Cell::cube("v"), Cell::cube("v")]] });
        }
        cubes.push(CubeSpec {
            label: "t".into(),
            dim: 2,
            faces: vec![[Cell::cube("p"), Cell::cube("q")], [Cell::cube("r"), Cell::cube("s")]],
        });
        let x = PresentedCubicalSet::new(cubes).unwrap();
        let expected = Chain::from_terms([("p", -1), ("q", 1), ("r", 1), ("s", -1)]).unwrap();
        assert_eq!(x.boundary("t").unwrap(), expected);
    }

    #[test]
    fn fully_degenerate_faces_vanish() {
        // a 2-cube collapsed onto the interval in each direction
        let mut cubes = interval().cubes().to_vec();
        cubes.push(CubeSpec {
            label: "d".into(),
            dim: 2,
            faces: vec![
                [Cell::degenerate("a", vec![1]), Cell::degenerate("a", vec![1])],
                [Cell::degenerate("a", vec![1]), Cell::degenerate("a", vec![1])],
            ],
        });
        let x = PresentedCubicalSet::new(cubes).unwrap();
        assert!(x.boundary("d").unwrap().is_zero());
        assert!(x.check_complex().unwrap().passed);
    }

    #[test]
    fn degenerate_face_of_degenerate_cell() {
        let x = interval();
        // s pulled back along the projection forgetting coordinate 1: a 2-cell
        let cell = Cell::degenerate("s", vec![1]);
        assert_eq!(x.cell_face(&cell, 1, 0).unwrap(), Cell::cube("s"));
        assert_eq!(x.cell_face(&cell, 2, 1).unwrap(), Cell::degenerate("b", vec![1]));
    }

    #[test]
    fn rejects_wrong_face_dimension() {
        let err = PresentedCubicalSet::new([
            CubeSpec { label: "a".into(), dim: 0, faces: vec![] },
            CubeSpec { label: "e".into(), dim: 1, faces: vec![[Cell::cube("a"), Cell::cube("a")]] },
            CubeSpec { label: "t".into(), dim: 2, faces: vec![[Cell::cube("a"), Cell::cube("e")], [Cell::cube("e"), Cell::cube("e")]] },
        ])
        .unwrap_err();
        assert!(matches!(err, CubicalError::FaceDimension { .. }));
    }

    #[test]
    fn empty_set_passes() {
        let r = PresentedCubicalSet::empty().check_complex().unwrap();
        assert!(r.passed);
        assert_eq!(r.face_identities_checked, 0);
    }
}
