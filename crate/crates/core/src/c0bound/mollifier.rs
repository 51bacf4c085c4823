use super::adaptive_simpson;

pub const PSI_TABLE_POINTS: usize = 10_000;

const QUAD_TOL: f64 = 1e-10;

fn kernel(t: f64) -> f64 {
    let q = 1.0 - 4.0 * t * t;
    if q <= 0.0 {
        0.0
    } else {
        (-1.0 / q).exp()
    }
}

/// `φ(t) = c·exp(−1/(1 − (2t)²))` on `(−1/2, 1/2)`, zero elsewhere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mollifier {
    pub normalizer: f64,
}

impl Mollifier {
    /// The normalizer making `∫φ = 1`.
    pub fn normalized() -> Self {
        Self { normalizer: 1.0 / adaptive_simpson(&kernel, -0.5, 0.5, QUAD_TOL) }
    }

    /// The constant `2e`, whose mass is not 1.
    pub fn two_e() -> Self {
        Self { normalizer: 2.0 * std::f64::consts::E }
    }

    pub fn phi(&self, t: f64) -> f64 {
        self.normalizer * kernel(t)
    }

    pub fn mass(&self) -> f64 {
        adaptive_simpson(&|t| self.phi(t), -0.5, 0.5, QUAD_TOL)
    }

    /// `ψ(s) = ∫_{s−1/2}^{1/2} φ` on `[0, 1]`, clamped to 1 left of 0 and 0
    /// right of 1, computed directly by quadrature.
    pub fn psi_exact(&self, s: f64) -> f64 {
        if s <= 0.0 {
            1.0
        } else if s >= 1.0 {
            0.0
        } else {
            adaptive_simpson(&|t| self.phi(t), s - 0.5, 0.5, QUAD_TOL)
        }
    }
}

/// `ψ` tabulated on a uniform grid of `[0, 1]` with cubic Hermite
/// interpolation against the exact derivative `ψ′(s) = −φ(s − 1/2)`.
#[derive(Clone, Debug)]
pub struct PsiTable {
    mollifier: Mollifier,
    values: Vec<f64>,
    step: f64,
}

impl PsiTable {
    pub fn new(mollifier: Mollifier) -> Self {
        Self::with_points(mollifier, PSI_TABLE_POINTS)
    }

    pub fn with_points(mollifier: Mollifier, intervals: usize) -> Self {
        let step = 1.0 / intervals as f64;
        let mut values = Vec::with_capacity(intervals + 1);
        // Accumulate mass from the right so that ψ(1) = 0 exactly.
        let mut tail = 0.0;
        values.push(0.0);
        for k in (0..intervals).rev() {
            let (a, b) = (k as f64 * step - 0.5, (k + 1) as f64 * step - 0.5);
            tail += adaptive_simpson(&|t| mollifier.phi(t), a, b, QUAD_TOL);
            values.push(tail);
        }
        values.reverse();
        // Rescale by the tabulated mass so that ψ(0) = 1 exactly as well.
        let total = values[0];
        values.iter_mut().for_each(|v| *v /= total);
        Self { mollifier, values, step }
    }

    pub fn mollifier(&self) -> &Mollifier {
        &self.mollifier
    }

    pub fn psi(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 1.0;
        }
        if s >= 1.0 {
            return 0.0;
        }
        let n = self.values.len() - 1;
        let k = ((s / self.step) as usize).min(n - 1);
        let (x0, x1) = (k as f64 * self.step, (k + 1) as f64 * self.step);
        let u = (s - x0) / self.step;
        let (h00, h10, h01, h11) =
            ((1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u), u * (1.0 - u) * (1.0 - u), u * u * (3.0 - 2.0 * u), u * u * (u - 1.0));
        h00 * self.values[k] + h10 * self.step * self.psi_prime(x0) + h01 * self.values[k + 1] + h11 * self.step * self.psi_prime(x1)
    }

    pub fn psi_prime(&self, s: f64) -> f64 {
        if (0.0..=1.0).contains(&s) {
            -self.mollifier.phi(s - 0.5)
        } else {
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_mass_and_two_e_constant() {
        let m = Mollifier::normalized();
        assert!((m.mass() - 1.0).abs() < 1e-10);
        assert!((Mollifier::two_e().mass() - 1.0).abs() > 0.1);
    }

    #[test]
    fn table_endpoints() {
        let t = PsiTable::new(Mollifier::normalized());
        assert!((t.psi(0.0) - 1.0).abs() < 1e-8);
        assert_eq!(t.psi(1.0), 0.0);
        assert_eq!(t.psi(-5.0), 1.0);
        assert!((t.psi(0.5) - 0.5).abs() < 1e-8);
    }
}
