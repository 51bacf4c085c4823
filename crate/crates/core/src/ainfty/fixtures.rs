//! Small hand-built categories used as test and demonstration fixtures.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{transfer, AInftyCategory, HomRetract, MorphismGenerator, Retract, TransferResult};
use crate::exactalg::Chain;

fn gen(label: &str, s: &str, t: &str, d: i64) -> MorphismGenerator {
    MorphismGenerator { label: label.into(), source: s.into(), target: t.into(), degree: d }
}

fn chain(terms: &[(&str, i64)]) -> Chain {
    Chain::from_terms(terms.iter().map(|&(l, c)| (l, c))).expect("small coefficients")
}

/// Two objects `P`, `Q`; `hom(P,Q)` has `a, b, a', b'` in degree 0 and
/// `c, c'` in degree −1, `hom(Q,Q)` has `t` in degree 0.
/// `μ_1 c = a − b`, `μ_1 c' = b' − a'`, and `t` acts by
/// `a ↦ a'`, `b ↦ b'`, `c ↦ c'`.
pub fn dg_fixture() -> AInftyCategory {
    let mut c = AInftyCategory::new(
        vec!["P".into(), "Q".into()],
        vec![
            gen("a", "P", "Q", 0),
            gen("b", "P", "Q", 0),
            gen("a'", "P", "Q", 0),
            gen("b'", "P", "Q", 0),
            gen("c", "P", "Q", -1),
            gen("c'", "P", "Q", -1),
            gen("t", "Q", "Q", 0),
        ],
    )
    .expect("fixture");
    c.set_operation(&["c"], chain(&[("a", 1), ("b", -1)])).expect("fixture");
    c.set_operation(&["c'"], chain(&[("b'", 1), ("a'", -1)])).expect("fixture");
    c.set_operation(&["t", "a"], chain(&[("a'", 1)])).expect("fixture");
    c.set_operation(&["t", "b"], chain(&[("b'", 1)])).expect("fixture");
    c.set_operation(&["t", "c"], chain(&[("c'", 1)])).expect("fixture");
    c
}

/// One object with `x, y, u, v` in degree 0 and `w` in degree −1:
/// `μ_2(x,x) = y`, `μ_2(y,x) = u`, `μ_2(x,y) = v`, `μ_3(x,x,x) = w`,
/// `μ_1 w = u − v`. The product is not associative on chains, but `μ_3`
/// makes it associative up to the boundary `μ_1 w`.
pub fn mu3_fixture() -> AInftyCategory {
    let o = "O";
    let mut c = AInftyCategory::new(
        vec![o.into()],
        vec![gen("x", o, o, 0), gen("y", o, o, 0), gen("u", o, o, 0), gen("v", o, o, 0), gen("w", o, o, -1)],
    )
    .expect("fixture");
    c.set_operation(&["x", "x"], chain(&[("y", 1)])).expect("fixture");
    c.set_operation(&["y", "x"], chain(&[("u", 1)])).expect("fixture");
    c.set_operation(&["x", "y"], chain(&[("v", 1)])).expect("fixture");
    c.set_operation(&["x", "x", "x"], chain(&[("w", 1)])).expect("fixture");
    c.set_operation(&["w"], chain(&[("u", 1), ("v", -1)])).expect("fixture");
    c
}

/// The ring ℤ: one object, `hom = ℤ·1` in degree 0, `μ_2(1,1) = 1`.
pub fn integers() -> AInftyCategory {
    let mut c = AInftyCategory::new(vec!["*".into()], vec![gen("1", "*", "*", 0)]).expect("fixture");
    c.set_operation(&["1", "1"], chain(&[("1", 1)])).expect("fixture");
    c
}

/// A DG category on objects `0 → 1 → 2 → 3` carrying a Massey product.
///
/// Generators `a ∈ hom(0,1)`, `b ∈ hom(1,2)`, `c ∈ hom(2,3)` and `u, v` of
/// degree 1, products `ba, cb, cu, va` of degree 2, `cba` of degree 3, with
/// `du = ba`, `dv = cb`. In the category's sign convention
/// `μ_1 x = (−1)^{|x|} dx` and `μ_2(x_2, x_1) = (−1)^{|x_1|} x_2 x_1`.
pub fn massey_dg() -> AInftyCategory {
    let mut c = AInftyCategory::new(
        vec!["0".into(), "1".into(), "2".into(), "3".into()],
        vec![
            gen("a", "0", "1", 1),
            gen("b", "1", "2", 1),
            gen("c", "2", "3", 1),
            gen("u", "0", "2", 1),
            gen("ba", "0", "2", 2),
            gen("v", "1", "3", 1),
            gen("cb", "1", "3", 2),
            gen("cu", "0", "3", 2),
            gen("va", "0", "3", 2),
            gen("cba", "0", "3", 3),
        ],
    )
    .expect("fixture");
    // differential: du = ba, dv = cb, d(cu) = −cba, d(va) = cba
    let d: &[(&str, &[(&str, i64)])] = &[("u", &[("ba", 1)]), ("v", &[("cb", 1)]), ("cu", &[("cba", -1)]), ("va", &[("cba", 1)])];
    let degree = |l: &str| c.degree(l).expect("fixture");
    let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
    let mut ops: Vec<(Vec<&str>, Chain)> = Vec::new();
    for (x, dx) in d {
        let s = sign(degree(x));
        ops.push((vec![*x], chain(&dx.iter().map(|&(l, k)| (l, s * k)).collect::<Vec<_>>())));
    }
    // strict products x_2 x_1
    let m: &[(&str, &str, &str)] =
        &[("b", "a", "ba"), ("c", "b", "cb"), ("c", "u", "cu"), ("v", "a", "va"), ("c", "ba", "cba"), ("cb", "a", "cba")];
    for &(x2, x1, out) in m {
        ops.push((vec![x2, x1], chain(&[(out, sign(degree(x1)))])));
    }
    for (inputs, out) in ops {
        c.set_operation(&inputs, out).expect("fixture");
    }
    c
}

/// A deformation retract of [`massey_dg`] onto its cohomology. `variant`
/// selects the complement of the cycle `cu + va` in degree 2 of `hom(0,3)`:
/// even variants use `va`, odd ones `cu`.
pub fn massey_retract(variant: u64) -> Retract {
    let m =
        |pairs: &[(&str, &[(&str, i64)])]| -> BTreeMap<String, Chain> { pairs.iter().map(|(k, v)| (k.to_string(), chain(v))).collect() };
    let single = |src: &str, tgt: &str, x: &str, d: i64| HomRetract {
        source: src.into(),
        target: tgt.into(),
        homology: vec![(x.into(), d)],
        i: m(&[(x, &[(x, 1)])]),
        p: m(&[(x, &[(x, 1)])]),
        h: BTreeMap::new(),
    };
    let acyclic = |src: &str, tgt: &str, top: &str, bottom: &str| HomRetract {
        source: src.into(),
        target: tgt.into(),
        homology: vec![],
        i: BTreeMap::new(),
        p: BTreeMap::new(),
        h: m(&[(top, &[(bottom, 1)])]),
    };
    let (p03, h03): (BTreeMap<String, Chain>, BTreeMap<String, Chain>) = if variant % 2 == 0 {
        (m(&[("cu", &[("m", 1)])]), m(&[("cba", &[("va", -1)])]))
    } else {
        (m(&[("va", &[("m", 1)])]), m(&[("cba", &[("cu", 1)])]))
    };
    Retract {
        homs: vec![
            single("0", "1", "a", 1),
            single("1", "2", "b", 1),
            single("2", "3", "c", 1),
            acyclic("0", "2", "ba", "u"),
            acyclic("1", "3", "cb", "v"),
            HomRetract {
                source: "0".into(),
                target: "3".into(),
                homology: vec![("m".into(), 2)],
                i: m(&[("m", &[("cu", 1), ("va", 1)])]),
                p: p03,
                h: h03,
            },
        ],
    }
}

/// The A∞ structure transferred from [`massey_dg`] to its cohomology.
pub fn transferred_massey(variant: u64, d_max: usize) -> TransferResult {
    transfer(Arc::new(massey_dg()), &massey_retract(variant), d_max).expect("valid retract")
}
