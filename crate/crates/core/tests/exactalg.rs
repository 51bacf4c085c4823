use std::sync::Arc;

use ainf_core::exactalg::{
    graded_homology, homology, smith_normal_form, Chain, Generator, GradedModule, HomologyBasis, IntMatrix, SparseMap,
};
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

// Fraction-free elimination on an i128 copy; independent of the library.
fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Invariant factors from determinantal divisors: d_k = gcd of k×k minors,
/// s_k = d_k / d_{k-1}.
fn invariant_factors_oracle(rows: &[Vec<i64>]) -> Vec<i64> {
    let r = rows.len();
    let c = if r == 0 { 0 } else { rows[0].len() };
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                g = gcd(g as i64, det(&minor) as i64) as i128;
            }
        }
        if g == 0 {
            break;
        }
        out.push((g / prev) as i64);
        prev = g;
    }
    out
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn sparse_matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..=3], c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_certified(rows in matrix_strategy()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(&s.u.mul(&a).unwrap().mul(&s.v).unwrap(), &s.d);
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        // an integer inverse already certifies unimodularity; the determinant
        // is a second witness when its minors fit in i128
        for m in [&s.u, &s.v] {
            if let Ok(det) = m.determinant() {
                prop_assert_eq!(det.abs(), 1);
            }
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[0] > 0 && w[1] % w[0] == 0);
        }
        prop_assert_eq!(f, invariant_factors_oracle(&rows));
    }

    #[test]
    fn homology_ignores_generator_order(rows in sparse_matrix_strategy(), seed in any::<u64>()) {
        // two-term complex Z^c --A--> Z^r; homology at both ends
        let r = rows.len();
        let c = rows[0].len();
        let build = |perm_src: &[usize], perm_tgt: &[usize]| {
            let src = Arc::new(GradedModule::new(perm_src.iter().map(|&j| Generator::new(format!("e{j}"), 1))).unwrap());
            let tgt = Arc::new(GradedModule::new(perm_tgt.iter().map(|&i| Generator::new(format!("f{i}"), 0))).unwrap());
            let entries = (0..c).map(|j| {
                let chain = Chain::from_terms((0..r).map(|i| (format!("f{i}"), rows[i][j]))).unwrap();
                (format!("e{j}"), chain)
            });
            let d = SparseMap::new("d", src.clone(), tgt.clone(), -1, entries).unwrap();
            let empty = Arc::new(GradedModule::default());
            let zin = SparseMap::zero("in", empty.clone(), src, -1);
            let zout = SparseMap::zero("out", tgt, empty, -1);
            (homology(&d, &zout).unwrap(), homology(&zin, &d).unwrap())
        };
        let ident_s: Vec<usize> = (0..c).collect();
        let ident_t: Vec<usize> = (0..r).collect();
        let mut ps = ident_s.clone();
        let mut pt = ident_t.clone();
        let mut x = seed | 1;
        for v in [&mut ps, &mut pt] {
            for i in (1..v.len()).rev() {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                v.swap(i, (x % (i as u64 + 1)) as usize);
            }
        }
        prop_assert_eq!(build(&ident_s, &ident_t), build(&ps, &pt));
    }

    #[test]
    fn classification_is_linear(rows in sparse_matrix_strategy(), a in -3i64..=3, b in -3i64..=3) {
        let r = rows.len();
        let c = rows[0].len();
        let src = Arc::new(GradedModule::new((0..c).map(|j| Generator::new(format!("e{j}"), 1))).unwrap());
        let tgt = Arc::new(GradedModule::new((0..r).map(|i| Generator::new(format!("f{i}"), 0))).unwrap());
        let entries = (0..c).map(|j| {
            (format!("e{j}"), Chain::from_terms((0..r).map(|i| (format!("f{i}"), rows[i][j]))).unwrap())
        });
        let d = SparseMap::new("d", src, tgt.clone(), -1, entries).unwrap();
        let zout = SparseMap::zero("out", tgt, Arc::new(GradedModule::default()), -1);
        let basis = HomologyBasis::new(&d, &zout).unwrap();
        // every boundary classifies to zero
        for j in 0..c {
            let bd = d.image_of(&format!("e{j}")).cloned().unwrap_or_default();
            prop_assert!(basis.classify(&bd).unwrap().is_zero());
        }
        // representatives round-trip
        for (k, rep) in basis.free_representatives().unwrap().iter().enumerate() {
            let class = basis.classify(rep).unwrap();
            let mut expected = vec![0; basis.rank()];
            expected[k] = 1;
            prop_assert_eq!(class.free, expected);
        }
        let x = Chain::term("f0", a);
        let y = Chain::generator(format!("f{}", r - 1)).scaled(b).unwrap();
        let cx = basis.classify(&x).unwrap();
        let cy = basis.classify(&y).unwrap();
        let cxy = basis.classify(&x.plus(&y).unwrap()).unwrap();
        let sum: Vec<i64> = cx.free.iter().zip(&cy.free).map(|(p, q)| p + q).collect();
        prop_assert_eq!(cxy.free, sum);
    }
}

#[test]
fn torus_homology_by_degree() {
    // one vertex v, edges a b, square t with d t = a + b - a - b = 0
    let m = Arc::new(
        GradedModule::new([Generator::new("v", 0), Generator::new("a", 1), Generator::new("b", 1), Generator::new("t", 2)]).unwrap(),
    );
    let d = SparseMap::new("d", m.clone(), m, -1, std::iter::empty::<(String, Chain)>()).unwrap();
    let ranks: Vec<usize> = (0..=2).map(|k| graded_homology(&d, k).unwrap().rank).collect();
    assert_eq!(ranks, vec![1, 2, 1]);
}

#[test]
fn projective_plane_has_two_torsion() {
    // RP^2: v, edge e with d e = 0, disk f with d f = 2e
    let m = Arc::new(GradedModule::new([Generator::new("v", 0), Generator::new("e", 1), Generator::new("f", 2)]).unwrap());
    let d = SparseMap::new("d", m.clone(), m, -1, [("f".to_string(), Chain::term("e", 2))]).unwrap();
    let h1 = graded_homology(&d, 1).unwrap();
    assert_eq!((h1.rank, h1.torsion), (0, vec![2]));
    assert_eq!(graded_homology(&d, 2).unwrap().rank, 0);
}
