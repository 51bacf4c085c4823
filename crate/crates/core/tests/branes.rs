use ainf_core::branes::{chord_degree, maslov_winding, rotating_line, BraneError, LagrangianFrame, PhasePath, PinTorsor};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// `U·ℝⁿ` for a unitary `U` from the QR factorization of a random complex
/// matrix; its columns are an orthonormal Lagrangian frame.
fn random_frame(rng: &mut ChaCha8Rng, n: usize) -> LagrangianFrame {
    loop {
        let m = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        if m.clone().determinant().norm() < 1e-3 {
            continue;
        }
        return LagrangianFrame::new(m.qr().q()).unwrap();
    }
}

fn random_gl(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    loop {
        let a: DMatrix<f64> = DMatrix::from_fn(n, n, |_, _| rng.random_range(-2.0..2.0));
        let d = a.determinant().abs();
        if (0.1..=10.0).contains(&d) {
            return a;
        }
    }
}

#[test]
fn squared_phase_is_basis_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let n = 1 + k % 4;
        let f = random_frame(&mut rng, n);
        let g = f.change_basis(&random_gl(&mut rng, n)).unwrap();
        worst = worst.max((f.squared_phase() - g.squared_phase()).norm());
    }
    assert!(worst < 1e-9, "worst deviation {worst:e}");
}

#[test]
fn squared_phase_is_the_square_of_a_rotation() {
    // e^{iθ}ℝⁿ has det = e^{inθ}.
    for n in 1..=4 {
        let theta = 0.37;
        let u = DMatrix::identity(n, n) * Complex64::from_polar(1.0, theta);
        let f = LagrangianFrame::new(u).unwrap();
        let expected = Complex64::from_polar(1.0, 2.0 * n as f64 * theta);
        assert!((f.squared_phase() - expected).norm() < 1e-12);
    }
}

#[test]
fn volume_form_override_rotates_the_phase() {
    let f = LagrangianFrame::real(2).unwrap();
    let z = f.squared_phase_with(Complex64::new(0.0, 3.0)).unwrap();
    assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    assert_eq!(f.squared_phase_with(Complex64::new(0.0, 0.0)), Err(BraneError::ZeroVolumeForm));
}

#[test]
fn windings_of_rotating_lines() {
    for turns in 1..=3 {
        let p = PhasePath::from_frames(&rotating_line(40 * turns, turns as f64)).unwrap();
        assert_eq!(maslov_winding(&p, true).unwrap(), turns as i64);
    }
    let half = PhasePath::from_frames(&rotating_line(40, 0.5)).unwrap();
    assert!(matches!(maslov_winding(&half, true), Err(BraneError::NotClosed(_))));
    assert!(matches!(maslov_winding(&half, false), Err(BraneError::NonIntegral(_))));
    assert!((half.lift_difference() - 0.5).abs() < 1e-12);
}

#[test]
fn reversed_rotation_winds_negatively() {
    let mut frames = rotating_line(50, 2.0);
    frames.reverse();
    let p = PhasePath::from_frames(&frames).unwrap();
    assert_eq!(maslov_winding(&p, true).unwrap(), -2);
}

#[test]
fn higher_dimensional_loop() {
    // diag(e^{iπt}, e^{−iπt}, e^{2πit}) has squared phase e^{4πit}.
    let frames: Vec<_> = (0..=200)
        .map(|k| {
            let t = k as f64 / 200.0;
            let d = [PI * t, -PI * t, 2.0 * PI * t].map(|a| Complex64::from_polar(1.0, a));
            LagrangianFrame::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&d))).unwrap()
        })
        .collect();
    assert_eq!(maslov_winding(&PhasePath::from_frames(&frames).unwrap(), true).unwrap(), 2);
}

#[test]
fn torsor_axioms_on_small_fixtures() {
    for dim in 0..=3 {
        let labels = (0..1 << dim).map(|i| format!("P{i}")).collect();
        let t = PinTorsor::standard(dim, labels).unwrap();
        assert!(t.check_axioms().passed(), "dim {dim}");
    }
    // A relabelled action table: still a torsor.
    let points = ["a", "b", "c", "d"].map(String::from).to_vec();
    let table = vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1], vec![1, 0, 3, 2], vec![3, 2, 1, 0]];
    assert!(PinTorsor::from_table(2, points.clone(), table).unwrap().check_axioms().passed());
    // Rows that do not compose.
    let bad = vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![2, 3, 0, 1], vec![3, 0, 1, 2]];
    assert!(!PinTorsor::from_table(2, points, bad).unwrap().check_axioms().compatible);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn refinement_preserves_winding(seed in 0u64..1000, turns in -3i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // A wobbly closed loop of phases with the given winding.
        let n = 60 + (seed % 40) as usize;
        let amp: f64 = rng.random_range(0.0..0.05);
        let samples: Vec<_> = (0..=n)
            .map(|k| {
                let t = k as f64 / n as f64;
                Complex64::from_polar(1.0, 2.0 * PI * (turns as f64 * t + amp * (2.0 * PI * t).sin()))
            })
            .collect();
        let p = PhasePath::new(samples).unwrap();
        let w = maslov_winding(&p, true).unwrap();
        prop_assert_eq!(w, turns);
        prop_assert_eq!(maslov_winding(&p.refined(), true).unwrap(), w);
        prop_assert_eq!(maslov_winding(&p.concat(&p).unwrap(), true).unwrap(), 2 * w);
    }

    #[test]
    fn chord_degree_shifts_with_the_lift(a0 in -5.0f64..5.0, a1 in -5.0f64..5.0, m in -4i64..4) {
        prop_assert_eq!(chord_degree(a0, a1 + m as f64), chord_degree(a0, a1) + m);
        prop_assert_eq!(chord_degree(a0, a1 + 1.0), chord_degree(a0, a1) + 1);
    }
}
