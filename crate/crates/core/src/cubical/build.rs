use super::{Cell, CubeSpec, PresentedCubicalSet};

/// A graph as a 1-dimensional cubical set; `edges` are `(label, src, dst)`.
pub fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> PresentedCubicalSet {
    let mut cubes: Vec<CubeSpec> = vertices.iter().map(|v| CubeSpec { label: v.to_string(), dim: 0, faces: vec![] }).collect();
    cubes.extend(edges.iter().map(|(e, s, t)| CubeSpec { label: e.to_string(), dim: 1, faces: vec![[Cell::cube(*s), Cell::cube(*t)]] }));
    PresentedCubicalSet::new(cubes).expect("graph with known endpoints")
}

/// All faces of the standard `n`-cube, labelled by words over `{0,1,*}` in
/// brackets; `*` marks a free coordinate.
pub fn standard_cube(n: usize) -> PresentedCubicalSet {
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                [b'0', b'1', b'*'].into_iter().map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    let label = |w: &[u8]| format!("[{}]", String::from_utf8_lossy(w));
    let cubes = words.iter().map(|w| {
        let stars: Vec<usize> = (0..w.len()).filter(|&i| w[i] == b'*').collect();
        let faces = stars
            .iter()
            .map(|&pos| {
                [b'0', b'1'].map(|c| {
                    let mut f = w.clone();
                    f[pos] = c;
                    Cell::cube(label(&f))
                })
            })
            .collect();
        CubeSpec { label: label(w), dim: stars.len(), faces }
    });
    PresentedCubicalSet::new(cubes).expect("standard cube")
}

/// The minimal cubical torus: one vertex `v`, loops `a`, `b` and a square `t`
/// whose opposite sides are identified.
pub fn torus() -> PresentedCubicalSet {
    PresentedCubicalSet::new([
        CubeSpec { label: "v".into(), dim: 0, faces: vec![] },
        CubeSpec { label: "a".into(), dim: 1, faces: vec![[Cell::cube("v"), Cell::cube("v")]] },
        CubeSpec { label: "b".into(), dim: 1, faces: vec![[Cell::cube("v"), Cell::cube("v")]] },
        CubeSpec { label: "t".into(), dim: 2, faces: vec![[Cell::cube("b"), Cell::cube("b")], [Cell::cube("a"), Cell::cube("a")]] },
    ])
    .expect("torus")
}

/// The cone on `x` with apex `apex`: each cube `σ` gains a cone cube
/// `cone(σ)` one dimension higher whose last coordinate runs from `σ` to the
/// apex. The far face is the apex, degenerate in every other direction.
pub fn cone(x: &PresentedCubicalSet, apex: &str) -> PresentedCubicalSet {
    let name = |l: &str| format!("cone({l})");
    let mut cubes = x.cubes().to_vec();
    cubes.push(CubeSpec { label: apex.to_string(), dim: 0, faces: vec![] });
    for c in x.cubes() {
        let mut faces: Vec<[Cell; 2]> =
            c.faces.iter().map(|pair| pair.clone().map(|f| Cell::degenerate(name(&f.base), f.collapsed))).collect();
        faces.push([Cell::cube(c.label.clone()), Cell::degenerate(apex, (1..=c.dim).collect())]);
        cubes.push(CubeSpec { label: name(&c.label), dim: c.dim + 1, faces });
    }
    PresentedCubicalSet::new(cubes).expect("cone of a valid presentation")
}
