//! Seeded fixture generators. Every generator is a pure function of its
//! parameters and seed.

use std::collections::{BTreeMap, BTreeSet};

use ainf_core::ainfty::fixtures::transferred_massey;
use ainf_core::ainfty::{AInftyCategory, CategoryFile};
use ainf_core::branes::LagrangianFrame;
use ainf_core::cubical::{cone, graph, product, standard_cube, torus, CubeSpec, PresentedCubicalSet};
use ainf_core::pontryagin::{Digraph, DigraphFile, EdgeDecl, LoopModel, PontryaginCategory, SquareDecl};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_CUBICAL_GENERATORS: usize = 200;

/// Derives the seed of the `index`-th member of a family.
pub fn member_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_graph(rng: &mut ChaCha8Rng, tag: usize) -> PresentedCubicalSet {
    let nv = rng.random_range(1..=3);
    let ne = rng.random_range(1..=3);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{tag}_{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..ne)
        .map(|i| (format!("e{tag}_{i}"), vertices[rng.random_range(0..nv)].clone(), vertices[rng.random_range(0..nv)].clone()))
        .collect();
    let vr: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let er: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    graph(&vr, &er)
}

fn factor(rng: &mut ChaCha8Rng, tag: usize, room: usize) -> PresentedCubicalSet {
    match rng.random_range(0..if room >= 2 { 5 } else { 3 }) {
        0 => random_graph(rng, tag),
        1 => graph(&["p", "q"], &[("i", "p", "q")]),
        2 => graph(&["o"], &[("s", "o", "o")]),
        3 => torus(),
        _ => standard_cube(2),
    }
}

/// Down-closure of `keep` under taking faces.
fn closure(set: &PresentedCubicalSet, keep: BTreeSet<String>) -> PresentedCubicalSet {
    let by_label: BTreeMap<&str, &CubeSpec> = set.cubes().iter().map(|c| (c.label.as_str(), c)).collect();
    let mut seen = keep;
    let mut stack: Vec<String> = seen.iter().cloned().collect();
    while let Some(l) = stack.pop() {
        for pair in &by_label[l.as_str()].faces {
            for f in pair {
                if seen.insert(f.base.clone()) {
                    stack.push(f.base.clone());
                }
            }
        }
    }
    let cubes: Vec<CubeSpec> = set.cubes().iter().filter(|c| seen.contains(&c.label)).cloned().collect();
    PresentedCubicalSet::new(cubes).expect("closed under faces")
}

/// A random presented cubical set of dimension at most 4 with at most
/// [`MAX_CUBICAL_GENERATORS`] cubes: a product of small graphs, circles, tori
/// and squares, possibly coned (which brings in degenerate faces) and possibly
/// cut down to the closure of a random set of cubes.
pub fn random_cubical(seed: u64) -> PresentedCubicalSet {
    let mut rng = rng(seed);
    loop {
        let target = rng.random_range(1..=4usize);
        let mut x = factor(&mut rng, 0, target);
        let mut tag = 1;
        while x.max_dim() < target && x.len() <= MAX_CUBICAL_GENERATORS {
            let f = factor(&mut rng, tag, target - x.max_dim());
            x = product(&x, &f);
            tag += 1;
        }
        if x.max_dim() < 4 && rng.random_bool(0.4) {
            x = cone(&x, "apex");
        }
        if rng.random_bool(0.5) {
            let keep: BTreeSet<String> = x.cubes().iter().filter(|_| rng.random_bool(0.3)).map(|c| c.label.clone()).collect();
            if !keep.is_empty() {
                x = closure(&x, keep);
            }
        }
        if x.max_dim() <= 4 && x.len() <= MAX_CUBICAL_GENERATORS {
            return x;
        }
    }
}

/// A random digraph on `vertices` vertices with up to six edges and a few
/// squares between parallel length-2 paths.
pub fn digraph_squares(vertices: usize, seed: u64) -> DigraphFile {
    let mut rng = rng(seed);
    let nv = vertices.max(1);
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let ne = rng.random_range(1..=6);
    let edges: Vec<EdgeDecl> = (0..ne)
        .map(|i| EdgeDecl { id: format!("e{i}"), src: names[rng.random_range(0..nv)].clone(), dst: names[rng.random_range(0..nv)].clone() })
        .collect();
    let mut by_ends: BTreeMap<(String, String), Vec<[String; 2]>> = BTreeMap::new();
    for e in &edges {
        for f in edges.iter().filter(|f| f.src == e.dst) {
            by_ends.entry((e.src.clone(), f.dst.clone())).or_default().push([e.id.clone(), f.id.clone()]);
        }
    }
    let groups: Vec<Vec<[String; 2]>> = by_ends.into_values().collect();
    let mut squares = Vec::new();
    if !groups.is_empty() {
        for _ in 0..rng.random_range(0..=4) {
            let g = &groups[rng.random_range(0..groups.len())];
            squares.push(SquareDecl { top: g[rng.random_range(0..g.len())].clone(), bottom: g[rng.random_range(0..g.len())].clone() });
        }
    }
    DigraphFile { vertices: names, edges, squares, cells: vec![] }
}

/// The Pontryagin DG category of a random digraph, as an A∞ category with
/// vanishing higher products.
pub fn random_dg(vertices: usize, max_len: usize, seed: u64) -> Result<AInftyCategory, Box<dyn std::error::Error + Send + Sync>> {
    let g = Digraph::new(digraph_squares(vertices, seed))?;
    let m = LoopModel::from_digraph(&g, max_len)?;
    Ok(PontryaginCategory::new(&m).to_ainfty()?)
}

/// The A∞ structure transferred to cohomology from the four-object Massey DG
/// category; the seed picks the retract.
pub fn transferred_ainfty(seed: u64, d_max: usize) -> CategoryFile {
    CategoryFile::from_category(&transferred_massey(seed, d_max).minimal)
}

/// Orthonormal Lagrangian frame `U·ℝⁿ`, `U` unitary from a QR factorization.
pub fn random_frame(rng: &mut ChaCha8Rng, n: usize) -> LagrangianFrame {
    loop {
        let m = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        if m.clone().determinant().norm() < 1e-3 {
            continue;
        }
        return LagrangianFrame::new(m.qr().q()).expect("unitary image of ℝⁿ");
    }
}

/// A real matrix with `|det| ∈ [0.1, 10]`.
pub fn random_gl(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    loop {
        let a: DMatrix<f64> = DMatrix::from_fn(n, n, |_, _| rng.random_range(-2.0..2.0));
        if (0.1..=10.0).contains(&a.determinant().abs()) {
            return a;
        }
    }
}

/// `U·diag(e^{iπ·turns·t}, 1, …, 1)·A(t)` for `samples + 1` values of
/// `t ∈ [0, 1]`, with a fixed random unitary `U` and random real bases
/// `A(t)`; its winding is `turns`.
pub fn frame_path(n: usize, samples: usize, turns: i64, seed: u64) -> Vec<LagrangianFrame> {
    let mut rng = rng(seed);
    let n = n.max(1);
    let u = random_frame(&mut rng, n).basis().clone();
    (0..=samples)
        .map(|k| {
            let t = k as f64 / samples.max(1) as f64;
            let mut d = DMatrix::<Complex64>::identity(n, n);
            d[(0, 0)] = Complex64::from_polar(1.0, std::f64::consts::PI * turns as f64 * t);
            let a = random_gl(&mut rng, n).map(|x| Complex64::new(x, 0.0));
            LagrangianFrame::new(&u * d * a).expect("Lagrangian by construction")
        })
        .collect()
}

/// Points `(s, t)` in the open interior of each of the four `s`-branches of
/// `h_μ`, `per_branch` each.
pub fn branch_points(per_branch: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = rng(seed);
    let mut pts = Vec::with_capacity(4 * per_branch);
    for (lo, hi) in [(-0.999, -0.001), (0.001, 0.999), (1.001, 1.999), (2.001, 3.0)] {
        for _ in 0..per_branch {
            pts.push((rng.random_range(lo..hi), rng.random_range(0.001..0.999)));
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(digraph_squares(3, 7), digraph_squares(3, 7));
        assert_eq!(random_cubical(5).cubes(), random_cubical(5).cubes());
        assert_eq!(branch_points(3, 1), branch_points(3, 1));
    }

    #[test]
    fn random_cubical_respects_bounds() {
        for s in 0..40 {
            let x = random_cubical(s);
            assert!(x.len() <= MAX_CUBICAL_GENERATORS && x.max_dim() <= 4);
        }
    }
}
