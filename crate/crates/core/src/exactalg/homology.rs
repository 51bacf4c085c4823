use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AlgebraError, Chain, Coeff, GradedModule, IntMatrix, Result, SparseMap};

/// Betti rank and torsion coefficients of `ker(d_out) / im(d_in)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub rank: usize,
    pub torsion: Vec<Coeff>,
}

fn check_composable(d_in: &SparseMap, d_out: &SparseMap) -> Result<()> {
    if d_in.target() != d_out.source() {
        return Err(AlgebraError::ModuleMismatch(format!("target of `{}` is not the source of `{}`", d_in.name(), d_out.name())));
    }
    for (src, image) in d_in.entries() {
        let composed = d_out.apply(image)?;
        if !composed.is_zero() {
            return Err(AlgebraError::NotAComplex { witness: src.to_string(), image: composed });
        }
    }
    Ok(())
}

/// Homology at the middle module of `d_in` followed by `d_out`.
pub fn homology(d_in: &SparseMap, d_out: &SparseMap) -> Result<HomologySummary> {
    check_composable(d_in, d_out)?;
    let n = d_in.target().len();
    let rank_out = smith_normal_form(&d_out.to_matrix())?.rank();
    let factors = smith_normal_form(&d_in.to_matrix())?.invariant_factors();
    Ok(HomologySummary { rank: n - rank_out - factors.len(), torsion: factors.into_iter().filter(|&s| s > 1).collect() })
}

/// Homology in one degree of a differential `d: M → M` of any shift.
pub fn graded_homology(d: &SparseMap, degree: i64) -> Result<HomologySummary> {
    let d_in = d.restrict_to_degree(degree - d.shift());
    let d_out = d.restrict_to_degree(degree);
    homology(&d_in, &d_out)
}

/// Coordinates of a homology class: free part and torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomologyClass {
    pub free: Vec<Coeff>,
    /// `(modulus, residue)` for each torsion summand.
    pub torsion: Vec<(Coeff, Coeff)>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&(_, r)| r == 0)
    }

    pub fn negated(&self) -> HomologyClass {
        HomologyClass {
            free: self.free.iter().map(|x| -x).collect(),
            torsion: self.torsion.iter().map(|&(m, r)| (m, (-r).rem_euclid(m))).collect(),
        }
    }
}

/// An explicit basis of homology at the middle of a two-term complex, able to
/// classify cycles and produce cycle representatives.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    middle: Arc<GradedModule>,
    kernel_offset: usize,
    v_out_inv: IntMatrix,
    kernel: IntMatrix,
    u_im: IntMatrix,
    u_im_inv: IntMatrix,
    divisors: Vec<Coeff>,
}

impl HomologyBasis {
    pub fn new(d_in: &SparseMap, d_out: &SparseMap) -> Result<Self> {
        check_composable(d_in, d_out)?;
        let middle = d_in.target().clone();
        let n = middle.len();
        let s_out = smith_normal_form(&d_out.to_matrix())?;
        let r = s_out.rank();
        // kernel basis: trailing columns of v
        let mut kernel = IntMatrix::zeros(n, n - r);
        for i in 0..n {
            for j in r..n {
                kernel[(i, j - r)] = s_out.v[(i, j)];
            }
        }
        // boundaries in kernel coordinates
        let coords = s_out.v_inv.mul(&d_in.to_matrix())?;
        let m = coords.row_block(r, n);
        let s_im = smith_normal_form(&m)?;
        let divisors = s_im.invariant_factors();
        Ok(Self { middle, kernel_offset: r, v_out_inv: s_out.v_inv, kernel, u_im: s_im.u, u_im_inv: s_im.u_inv, divisors })
    }

    pub fn rank(&self) -> usize {
        self.kernel.cols() - self.divisors.len()
    }

    pub fn torsion(&self) -> Vec<Coeff> {
        self.divisors.iter().copied().filter(|&s| s > 1).collect()
    }

    pub fn summary(&self) -> HomologySummary {
        HomologySummary { rank: self.rank(), torsion: self.torsion() }
    }

    fn chain_from_kernel_coords(&self, y: &[Coeff]) -> Result<Chain> {
        let v = self.kernel.mul_vec(y)?;
        Chain::from_terms(self.middle.generators().iter().zip(v).map(|(g, c)| (g.label.clone(), c)))
    }

    fn basis_column(&self, index: usize) -> Result<Chain> {
        let y = self.u_im_inv.column(index);
        self.chain_from_kernel_coords(&y)
    }

    /// Cycle representatives of the free generators.
    pub fn free_representatives(&self) -> Result<Vec<Chain>> {
        (self.divisors.len()..self.kernel.cols()).map(|i| self.basis_column(i)).collect()
    }

    /// Cycle representatives of the torsion generators, with their orders.
    pub fn torsion_representatives(&self) -> Result<Vec<(Coeff, Chain)>> {
        self.divisors.iter().enumerate().filter(|(_, &s)| s > 1).map(|(i, &s)| Ok((s, self.basis_column(i)?))).collect()
    }

    /// Class of a cycle; fails with [`AlgebraError::NotACycle`] otherwise.
    pub fn classify(&self, cycle: &Chain) -> Result<HomologyClass> {
        self.middle.check_chain(cycle)?;
        let x: Vec<Coeff> = self.middle.generators().iter().map(|g| cycle.coeff(&g.label)).collect();
        let w = self.v_out_inv.mul_vec(&x)?;
        if w[..self.kernel_offset].iter().any(|&c| c != 0) {
            return Err(AlgebraError::NotACycle);
        }
        let y = self.u_im.mul_vec(&w[self.kernel_offset..])?;
        let q = self.divisors.len();
        Ok(HomologyClass {
            free: y[q..].to_vec(),
            torsion: self.divisors.iter().zip(&y).filter(|(&s, _)| s > 1).map(|(&s, &c)| (s, c.rem_euclid(s))).collect(),
        })
    }

    /// A cycle representing the given class.
    pub fn representative(&self, class: &HomologyClass) -> Result<Chain> {
        let mut out = Chain::zero();
        for (c, rep) in class.free.iter().zip(self.free_representatives()?) {
            out.add_scaled(&rep, *c)?;
        }
        for ((_, r), (_, rep)) in class.torsion.iter().zip(self.torsion_representatives()?) {
            out.add_scaled(&rep, *r)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Generator;

    fn circle() -> (SparseMap, SparseMap, SparseMap) {
        // one 0-cube v, one 1-cube e with both faces equal to v
        let c1 = Arc::new(GradedModule::new([Generator::new("e", 1)]).unwrap());
        let c0 = Arc::new(GradedModule::new([Generator::new("v", 0)]).unwrap());
        let empty = Arc::new(GradedModule::default());
        let d1 = SparseMap::new("d1", c1.clone(), c0.clone(), -1, [("e".to_string(), Chain::zero())]).unwrap();
        let d2 = SparseMap::zero("d2", empty.clone(), c1, -1);
        let d0 = SparseMap::zero("d0", c0, empty, -1);
        (d2, d1, d0)
    }

    #[test]
    fn circle_homology() {
        let (d2, d1, d0) = circle();
        assert_eq!(homology(&d1, &d0).unwrap(), HomologySummary { rank: 1, torsion: vec![] });
        assert_eq!(homology(&d2, &d1).unwrap(), HomologySummary { rank: 1, torsion: vec![] });
    }

    #[test]
    fn point_homology() {
        let c0 = Arc::new(GradedModule::new([Generator::new("pt", 0)]).unwrap());
        let empty = Arc::new(GradedModule::default());
        let d_in = SparseMap::zero("in", empty.clone(), c0.clone(), -1);
        let d_out = SparseMap::zero("out", c0, empty, -1);
        assert_eq!(homology(&d_in, &d_out).unwrap(), HomologySummary { rank: 1, torsion: vec![] });
    }

    #[test]
    fn multiplication_by_two_has_torsion() {
        let a = Arc::new(GradedModule::new([Generator::new("a", 1)]).unwrap());
        let b = Arc::new(GradedModule::new([Generator::new("b", 0)]).unwrap());
        let empty = Arc::new(GradedModule::default());
        let d_in = SparseMap::new("2", a, b.clone(), -1, [("a".to_string(), Chain::term("b", 2))]).unwrap();
        let d_out = SparseMap::zero("0", b, empty, -1);
        assert_eq!(homology(&d_in, &d_out).unwrap(), HomologySummary { rank: 0, torsion: vec![2] });
        let basis = HomologyBasis::new(&d_in, &d_out).unwrap();
        assert_eq!(basis.classify(&Chain::term("b", 3)).unwrap().torsion, vec![(2, 1)]);
        assert!(basis.classify(&Chain::term("b", 4)).unwrap().is_zero());
    }

    #[test]
    fn nonzero_composite_reports_witness() {
        let m = Arc::new(GradedModule::new([Generator::new("x", 1), Generator::new("y", 0)]).unwrap());
        let f = SparseMap::new("f", m.clone(), m.clone(), -1, [("x".to_string(), Chain::generator("y"))]).unwrap();
        let g = SparseMap::new("g", m.clone(), m.clone(), 1, [("y".to_string(), Chain::generator("x"))]).unwrap();
        match homology(&f, &g) {
            Err(AlgebraError::NotAComplex { witness, .. }) => assert_eq!(witness, "x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_rejects_non_cycles() {
        let (_, d1, d0) = circle();
        let basis = HomologyBasis::new(&d1, &d0).unwrap();
        assert_eq!(basis.rank(), 1);
        let rep = &basis.free_representatives().unwrap()[0];
        assert_eq!(basis.classify(rep).unwrap().free, vec![1]);
    }
}
