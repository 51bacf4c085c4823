use super::{C0Error, PsiTable, Result};

/// A natural cubic spline through points of `ℝ^m` sampled at equally spaced
/// parameters of `[0, 1]`.
#[derive(Clone, Debug)]
pub struct NaturalSpline {
    points: Vec<Vec<f64>>,
    second: Vec<Vec<f64>>,
    step: f64,
}

impl NaturalSpline {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if n < 2 || points.iter().any(|p| p.len() != points[0].len()) {
            return Err(C0Error::BadSamples);
        }
        let m = points[0].len();
        let step = 1.0 / (n - 1) as f64;
        // Thomas algorithm for M_{i−1} + 4M_i + M_{i+1} = 6(y_{i−1} − 2y_i + y_{i+1})/h², M_0 = M_{n−1} = 0.
        let mut second = vec![vec![0.0; m]; n];
        if n > 2 {
            let inner = n - 2;
            let mut c = vec![0.0; inner];
            let mut d = vec![vec![0.0; m]; inner];
            for i in 0..inner {
                let denom = 4.0 - if i > 0 { c[i - 1] } else { 0.0 };
                c[i] = 1.0 / denom;
                for j in 0..m {
                    let rhs = 6.0 * (points[i][j] - 2.0 * points[i + 1][j] + points[i + 2][j]) / (step * step);
                    let prev = if i > 0 { d[i - 1][j] } else { 0.0 };
                    d[i][j] = (rhs - prev) / denom;
                }
            }
            for i in (0..inner).rev() {
                for j in 0..m {
                    let next = if i + 1 < inner { second[i + 2][j] } else { 0.0 };
                    second[i + 1][j] = d[i][j] - c[i] * next;
                }
            }
        }
        Ok(Self { points, second, step })
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let n = self.points.len();
        let x = x.clamp(0.0, 1.0);
        let k = ((x / self.step) as usize).min(n - 2);
        (k, x - k as f64 * self.step)
    }

    pub fn eval(&self, x: f64) -> Vec<f64> {
        let (k, u) = self.locate(x);
        let h = self.step;
        let v = h - u;
        (0..self.dim())
            .map(|j| {
                let (m0, m1) = (self.second[k][j], self.second[k + 1][j]);
                let (y0, y1) = (self.points[k][j], self.points[k + 1][j]);
                m0 * v.powi(3) / (6.0 * h) + m1 * u.powi(3) / (6.0 * h) + (y0 / h - m0 * h / 6.0) * v + (y1 / h - m1 * h / 6.0) * u
            })
            .collect()
    }

    pub fn derivative(&self, x: f64) -> Vec<f64> {
        let (k, u) = self.locate(x);
        let h = self.step;
        let v = h - u;
        (0..self.dim())
            .map(|j| {
                let (m0, m1) = (self.second[k][j], self.second[k + 1][j]);
                let (y0, y1) = (self.points[k][j], self.points[k + 1][j]);
                -m0 * v * v / (2.0 * h) + m1 * u * u / (2.0 * h) - (y0 / h - m0 * h / 6.0) + (y1 / h - m1 * h / 6.0)
            })
            .collect()
    }
}

/// `σ_ε(s) = σ̃(ε·ψ(s))`.
pub fn sigma_eps(path: &NaturalSpline, psi: &PsiTable, eps: f64, s: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(C0Error::EpsOutOfRange(eps));
    }
    Ok(path.eval(eps * psi.psi(s)))
}
