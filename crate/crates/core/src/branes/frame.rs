use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{BraneError, Result};

pub const LAGRANGIAN_TOLERANCE: f64 = 1e-10;

/// A real basis `v_1, …, v_n` (matrix columns) of a Lagrangian subspace of
/// `ℂⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianFrame {
    basis: DMatrix<Complex64>,
}

/// `ω(u, v) = Im ⟨u, v⟩` for the standard symplectic form.
fn omega(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a.conj() * b).im).sum()
}

impl LagrangianFrame {
    pub fn new(basis: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = basis.shape();
        if rows != cols || rows == 0 {
            return Err(BraneError::Shape { rows, cols });
        }
        let n = rows;
        let col = |j: usize| basis.column(j).iter().copied().collect::<Vec<_>>();
        for i in 0..n {
            for j in i + 1..n {
                let w = omega(&col(i), &col(j));
                if w.abs() > LAGRANGIAN_TOLERANCE {
                    return Err(BraneError::NotLagrangian { i: i + 1, j: j + 1, omega: w });
                }
            }
        }
        let det = basis.clone().determinant().norm();
        if det < 1e-12 {
            return Err(BraneError::Degenerate(det));
        }
        Ok(Self { basis })
    }

    /// The standard real subspace `ℝⁿ ⊂ ℂⁿ` with its standard basis.
    pub fn real(n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(n, n))
    }

    /// From `2n²` reals: `(re, im)` pairs of the basis matrix in row-major
    /// order, column `j` being `v_j`.
    pub fn from_row(values: &[f64]) -> Result<Self> {
        let m = values.len() / 2;
        let n = (m as f64).sqrt().round() as usize;
        if values.len() % 2 != 0 || n * n != m {
            return Err(BraneError::Shape { rows: values.len(), cols: 1 });
        }
        let basis = DMatrix::from_fn(n, n, |r, c| {
            let k = 2 * (r * n + c);
            Complex64::new(values[k], values[k + 1])
        });
        Self::new(basis)
    }

    pub fn to_row(&self) -> Vec<f64> {
        let n = self.n();
        let mut out = Vec::with_capacity(2 * n * n);
        for r in 0..n {
            for c in 0..n {
                let z = self.basis[(r, c)];
                out.push(z.re);
                out.push(z.im);
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    /// The same subspace with basis `V·A` for a real matrix `A`.
    pub fn change_basis(&self, a: &DMatrix<f64>) -> Result<Self> {
        let a = a.map(|x| Complex64::new(x, 0.0));
        Self::new(&self.basis * a)
    }

    /// `η²(v_1 ∧ ⋯ ∧ v_n)/|η²(v_1 ∧ ⋯ ∧ v_n)|` with `η = dz_1 ∧ ⋯ ∧ dz_n`,
    /// i.e. `det(V)²` normalized.
    pub fn squared_phase(&self) -> Complex64 {
        self.squared_phase_with(Complex64::new(1.0, 0.0)).expect("standard volume form is nonzero")
    }

    /// The squared phase for the quadratic volume form `c·(dz_1 ∧ ⋯ ∧ dz_n)^{⊗2}`.
    pub fn squared_phase_with(&self, c: Complex64) -> Result<Complex64> {
        if c.norm() == 0.0 {
            return Err(BraneError::ZeroVolumeForm);
        }
        let det = self.basis.clone().determinant();
        let q = c * det * det;
        Ok(q / q.norm())
    }
}
