use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{C0Error, Result};

/// `g(x) = exp(−x²/(1 − x²))` for `|x| < 1`, zero otherwise, with its first
/// two derivatives.
pub fn bump(x: f64) -> (f64, f64, f64) {
    let q = 1.0 - x * x;
    if q <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let g = (-x * x / q).exp();
    (g, -2.0 * x / (q * q) * g, bracket_rational(x) * g)
}

/// `(4x² − 2(1−x²)² + 8x²(x²−1))/(1−x²)⁴`, so that `g″ = bracket_rational·g`.
fn bracket_rational(x: f64) -> f64 {
    let q = 1.0 - x * x;
    (4.0 * x * x - 2.0 * q * q + 8.0 * x * x * (x * x - 1.0)) / q.powi(4)
}

/// The bracketed expression times `exp(−s²/(1−s²))`, i.e. `g″(s)`.
pub fn bracket(s: f64) -> f64 {
    bump(s).2
}

/// Piece of the profile on which `s` lies: the shifted argument of `g` for
/// the two transition branches.
enum Branch {
    Left(f64),
    Flat,
    Right(f64),
    Off,
}

fn branch(s: f64) -> Branch {
    if s > -1.0 && s < 0.0 {
        Branch::Left(s)
    } else if (0.0..=1.0).contains(&s) {
        Branch::Flat
    } else if s > 1.0 && s < 2.0 {
        Branch::Right(s - 1.0)
    } else {
        Branch::Off
    }
}

/// The bump `f`: zero outside `(−1, 2)`, one on `[0, 1]`, `g(s)` on `(−1, 0)`
/// and `g(s − 1)` on `(1, 2)`.
pub fn bump_f(s: f64) -> f64 {
    match branch(s) {
        Branch::Left(x) | Branch::Right(x) => bump(x).0,
        Branch::Flat => 1.0,
        Branch::Off => 0.0,
    }
}

pub fn bump_f_prime(s: f64) -> f64 {
    match branch(s) {
        Branch::Left(x) | Branch::Right(x) => bump(x).1,
        _ => 0.0,
    }
}

/// The auxiliary function `h_μ(s, t) = f(s)·(t²/2 − t)·μ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HProfile {
    pub mu: f64,
}

impl HProfile {
    pub fn new(mu: f64) -> Self {
        Self { mu }
    }

    fn parts(&self, s: f64) -> (f64, f64, f64) {
        match branch(s) {
            Branch::Left(x) | Branch::Right(x) => bump(x),
            Branch::Flat => (1.0, 0.0, 0.0),
            Branch::Off => (0.0, 0.0, 0.0),
        }
    }

    pub fn value(&self, s: f64, t: f64) -> f64 {
        self.parts(s).0 * (t * t / 2.0 - t) * self.mu
    }

    pub fn dt(&self, s: f64, t: f64) -> f64 {
        self.parts(s).0 * (t - 1.0) * self.mu
    }

    pub fn ds(&self, s: f64, t: f64) -> f64 {
        self.parts(s).1 * (t * t / 2.0 - t) * self.mu
    }

    pub fn dtt(&self, s: f64) -> f64 {
        self.parts(s).0 * self.mu
    }

    pub fn dss(&self, s: f64, t: f64) -> f64 {
        self.parts(s).2 * (t * t / 2.0 - t) * self.mu
    }

    pub fn laplacian(&self, s: f64, t: f64) -> f64 {
        self.dss(s, t) + self.dtt(s)
    }
}

/// `c(s) = (C − A·s)·f(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianProfile {
    pub c: f64,
    pub a: f64,
}

impl HamiltonianProfile {
    pub fn new(c: f64, a: f64) -> Result<Self> {
        if !(c.is_finite() && a.is_finite() && a >= 0.0 && c > 2.0 * a) {
            return Err(C0Error::BadProfile { c, a });
        }
        Ok(Self { c, a })
    }

    pub fn value(&self, s: f64) -> f64 {
        (self.c - self.a * s) * bump_f(s)
    }

    pub fn derivative(&self, s: f64) -> f64 {
        -self.a * bump_f(s) + (self.c - self.a * s) * bump_f_prime(s)
    }
}

/// `−H₀ + (1 − t)·μ·f(s)`.
pub fn boundary_inequality(s: f64, t: f64, h0: f64, mu: f64) -> f64 {
    -h0 + (1.0 - t) * mu * bump_f(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketBound {
    pub grid: usize,
    pub lower: f64,
    pub upper: f64,
    pub min: f64,
    pub argmin: f64,
    pub max: f64,
    pub argmax: f64,
}

/// Extrema of [`bracket`] on `grid` equally spaced points of
/// `[−1 + 1e−6, 0]`.
pub fn bracket_bound(grid: usize) -> Result<BracketBound> {
    if grid < 2 {
        return Err(C0Error::BadGrid(grid));
    }
    let (lower, upper) = (-1.0 + 1e-6, 0.0);
    let h = (upper - lower) / (grid - 1) as f64;
    let values: Vec<(f64, f64)> = (0..grid)
        .into_par_iter()
        .map(|k| {
            let s = if k + 1 == grid { upper } else { lower + k as f64 * h };
            (bracket(s), s)
        })
        .collect();
    let (min, argmin) = values.iter().copied().fold((f64::INFINITY, 0.0), |m, v| if v.0 < m.0 { v } else { m });
    let (max, argmax) = values.iter().copied().fold((f64::NEG_INFINITY, 0.0), |m, v| if v.0 > m.0 { v } else { m });
    Ok(BracketBound { grid, lower, upper, min, argmin, max, argmax })
}
