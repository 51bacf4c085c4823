use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{BraneError, LagrangianFrame, Result};

/// Samples of the squared phase along a path with a continuous real lift
/// `α(t)`, `exp(2πi α(t)) = sample(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePath {
    samples: Vec<Complex64>,
    lift: Vec<f64>,
}

impl PhasePath {
    /// Nearest-branch continuation; consecutive lift jumps must stay below
    /// `1/2`.
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        Self::with_max_jump(samples, 0.5)
    }

    /// As [`Self::new`] with a tighter jump bound, to catch undersampling
    /// earlier.
    pub fn with_max_jump(samples: Vec<Complex64>, max_jump: f64) -> Result<Self> {
        let first = *samples.first().ok_or(BraneError::Empty)?;
        for (index, z) in samples.iter().enumerate() {
            if (z.norm() - 1.0).abs() > 1e-9 {
                return Err(BraneError::NotUnit { index, modulus: z.norm() });
            }
        }
        let mut lift = Vec::with_capacity(samples.len());
        lift.push(first.arg() / (2.0 * PI));
        for (index, w) in samples.windows(2).enumerate() {
            let jump = (w[1] / w[0]).arg() / (2.0 * PI);
            if jump.abs() >= max_jump {
                return Err(BraneError::SamplingTooCoarse { index, jump });
            }
            lift.push(lift[index] + jump);
        }
        Ok(Self { samples, lift })
    }

    pub fn from_frames(frames: &[LagrangianFrame]) -> Result<Self> {
        Self::new(frames.iter().map(LagrangianFrame::squared_phase).collect())
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn lift(&self) -> &[f64] {
        &self.lift
    }

    pub fn lift_difference(&self) -> f64 {
        self.lift[self.lift.len() - 1] - self.lift[0]
    }

    /// This path followed by `other`, dropping `other`'s first sample when it
    /// repeats the last sample here.
    pub fn concat(&self, other: &PhasePath) -> Result<PhasePath> {
        let mut samples = self.samples.clone();
        let skip = usize::from((other.samples[0] - samples[samples.len() - 1]).norm() < 1e-12);
        samples.extend_from_slice(&other.samples[skip..]);
        PhasePath::new(samples)
    }

    /// Inserts the geodesic midpoint between consecutive samples.
    pub fn refined(&self) -> PhasePath {
        let mut samples = Vec::with_capacity(2 * self.samples.len());
        for (i, w) in self.lift.windows(2).enumerate() {
            samples.push(self.samples[i]);
            samples.push(Complex64::from_polar(1.0, PI * (w[0] + w[1])));
        }
        samples.push(self.samples[self.samples.len() - 1]);
        PhasePath::new(samples).expect("halving jumps keeps the contract")
    }
}

/// `lift(end) − lift(start)`. A closed path must return to its first sample
/// and has integral winding; an open path is accepted only when the
/// difference is integral anyway.
pub fn maslov_winding(path: &PhasePath, closed: bool) -> Result<i64> {
    let s = path.samples();
    let diff = path.lift_difference();
    if closed {
        let gap = (s[s.len() - 1] - s[0]).norm();
        if gap > 1e-9 {
            return Err(BraneError::NotClosed(gap));
        }
    } else if (diff - diff.round()).abs() > 1e-9 {
        return Err(BraneError::NonIntegral(diff));
    }
    Ok(diff.round() as i64)
}

/// `μ(x) = ⌊α_1 − α_0⌋ + 1`.
pub fn chord_degree(alpha0: f64, alpha1: f64) -> i64 {
    (alpha1 - alpha0).floor() as i64 + 1
}

/// Frames of the lines `e^{iπt}ℝ ⊂ ℂ` for `samples + 1` equally spaced
/// `t ∈ [0, turns]`.
pub fn rotating_line(samples: usize, turns: f64) -> Vec<LagrangianFrame> {
    (0..=samples)
        .map(|k| {
            let t = turns * k as f64 / samples as f64;
            LagrangianFrame::new(DMatrix::from_element(1, 1, Complex64::from_polar(1.0, PI * t))).expect("a line is Lagrangian")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_degrees() {
        assert_eq!(chord_degree(0.0, 0.5), 1);
        assert_eq!(chord_degree(0.2, 0.2), 1);
        assert_eq!(chord_degree(1.0, 0.0), 0);
        assert_eq!(chord_degree(0.3, 1.8), chord_degree(0.3, 0.8) + 1);
    }

    #[test]
    fn rotating_line_winds_once() {
        let p = PhasePath::from_frames(&rotating_line(64, 1.0)).unwrap();
        assert_eq!(maslov_winding(&p, true).unwrap(), 1);
        assert_eq!(maslov_winding(&p.refined(), true).unwrap(), 1);
        let two = p.concat(&p).unwrap();
        assert_eq!(maslov_winding(&two, true).unwrap(), 2);
    }

    #[test]
    fn constant_path_and_coarse_sampling() {
        let p = PhasePath::new(vec![Complex64::new(1.0, 0.0); 5]).unwrap();
        assert_eq!(maslov_winding(&p, true).unwrap(), 0);
        let coarse = PhasePath::from_frames(&rotating_line(2, 1.0));
        assert!(matches!(coarse, Err(BraneError::SamplingTooCoarse { .. })));
    }
}
