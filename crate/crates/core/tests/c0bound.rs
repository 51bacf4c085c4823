use ainf_core::c0bound::{
    adaptive_simpson, bracket, bracket_bound, sigma_eps, verify_all, C0Config, C0Error, CheckStatus, HProfile, HamiltonianProfile,
    Mollifier, NaturalSpline, PsiTable,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 1000 points in the open interior of each of the four `s`-branches.
fn branch_points(seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::new();
    for (lo, hi) in [(-0.999, -0.001), (0.001, 0.999), (1.001, 1.999), (2.001, 3.0)] {
        for _ in 0..1000 {
            pts.push((rng.random_range(lo..hi), rng.random_range(0.001..0.999)));
        }
    }
    pts
}

#[test]
fn full_verification_passes() {
    let report = verify_all(&C0Config::standard(100_000, branch_points(1))).unwrap();
    for c in &report.checks {
        eprintln!("{:<28} {:?} {:e} {}", c.name, c.status, c.measured, c.note);
    }
    assert!(report.passed);
    assert!(report.bracket.min >= -200.0 && report.bracket.max <= 200.0);
    assert!(report.checks.iter().any(|c| c.name == "boundary_inequality_outer" && c.status == CheckStatus::Report));
}

#[test]
fn psi_oracle_values() {
    let m = Mollifier::normalized();
    let t = PsiTable::new(m);
    // ψ(s) + ψ(1 − s) = 1 by the symmetry of φ.
    for k in 0..=20 {
        let s = k as f64 / 20.0;
        assert!((t.psi(s) + t.psi(1.0 - s) - 1.0).abs() < 1e-8);
    }
    // Independent trapezoid oracle for ψ(0.3).
    let n = 200_000;
    let (a, b) = (-0.2, 0.5);
    let h = (b - a) / n as f64;
    let trap: f64 = (0..=n).map(|k| m.phi(a + k as f64 * h) * if k == 0 || k == n { 0.5 } else { 1.0 }).sum::<f64>() * h;
    assert!((t.psi(0.3) - trap).abs() < 1e-8);
}

#[test]
fn two_e_constant_has_wrong_mass() {
    let mass = Mollifier::two_e().mass();
    assert!(mass > 1.1 && mass < 1.3, "{mass}");
    let raw = adaptive_simpson(&|t: f64| if 4.0 * t * t < 1.0 { (-1.0 / (1.0 - 4.0 * t * t)).exp() } else { 0.0 }, -0.5, 0.5, 1e-12);
    assert!((Mollifier::normalized().normalizer * raw - 1.0).abs() < 1e-10);
}

#[test]
fn bracket_matches_second_derivative_of_the_bump() {
    // g(s) = exp(−s²/(1−s²)); compare with a five-point second difference.
    let g = |s: f64| (-s * s / (1.0 - s * s)).exp();
    for k in 1..50 {
        let s = -k as f64 / 50.0;
        let h = 1e-3;
        let fd = (-g(s + 2.0 * h) + 16.0 * g(s + h) - 30.0 * g(s) + 16.0 * g(s - h) - g(s - 2.0 * h)) / (12.0 * h * h);
        assert!((fd - bracket(s)).abs() < 1e-4 * (1.0 + fd.abs()), "s = {s}");
    }
    let coarse = bracket_bound(1_000).unwrap();
    let fine = bracket_bound(100_000).unwrap();
    assert!(fine.max >= coarse.max - 1e-9 && fine.min <= coarse.min + 1e-9);
    assert_eq!(bracket(0.0), -2.0);
}

#[test]
fn sigma_eps_examples() {
    let psi = PsiTable::new(Mollifier::normalized());
    let path = NaturalSpline::new(vec![vec![0.0, 0.0], vec![1.0, 2.0], vec![3.0, 1.0]]).unwrap();
    assert_eq!(sigma_eps(&path, &psi, 0.0, 0.7).unwrap(), path.eval(0.0));
    assert_eq!(sigma_eps(&path, &psi, 0.4, -1.0).unwrap(), path.eval(0.4));
    assert_eq!(sigma_eps(&path, &psi, 1.5, 0.0), Err(C0Error::EpsOutOfRange(1.5)));
}

#[test]
fn h_examples() {
    let h = HProfile::new(1.0);
    assert_eq!(h.laplacian(0.25, 0.1), 1.0);
    let s = -0.5;
    let fd = (h.value(s + 1e-5, 0.5) - h.value(s - 1e-5, 0.5)) / 2e-5;
    assert!((fd - h.ds(s, 0.5)).abs() < 1e-6);
    assert!(HamiltonianProfile::new(1.0, 1.0).is_err());
    assert!(HamiltonianProfile::new(3.0, -1.0).is_err());
}

proptest! {
    #[test]
    fn boundary_positive_for_admissible_h0(ratio in 0.0001f64..=0.5, s in 0.0f64..=1.0, mu in 0.01f64..100.0) {
        prop_assert!(ainf_core::c0bound::boundary_inequality(s, 0.0, ratio * mu, mu) > 0.0);
    }

    #[test]
    fn h_is_nonpositive(s in -3.0f64..4.0, t in 0.0f64..=1.0, mu in 0.0f64..10.0) {
        prop_assert!(HProfile::new(mu).value(s, t) <= 0.0);
    }
}
