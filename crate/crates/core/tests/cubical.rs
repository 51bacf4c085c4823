use ainf_core::cubical::{cone, cross, graph, product, standard_cube, torus, Cell, CubeSpec, CubicalWitness, PresentedCubicalSet};
use ainf_core::exactalg::Chain;
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct GraphSpec {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

fn graph_strategy() -> impl Strategy<Value = GraphSpec> {
    (1usize..=3).prop_flat_map(|v| prop::collection::vec((0..v, 0..v), 0..=2).prop_map(move |edges| GraphSpec { vertices: v, edges }))
}

fn build_graph(g: &GraphSpec, tag: &str) -> PresentedCubicalSet {
    let vs: Vec<String> = (0..g.vertices).map(|i| format!("{tag}v{i}")).collect();
    let es: Vec<(String, String, String)> =
        g.edges.iter().enumerate().map(|(i, &(s, t))| (format!("{tag}e{i}"), vs[s].clone(), vs[t].clone())).collect();
    let vrefs: Vec<&str> = vs.iter().map(String::as_str).collect();
    let erefs: Vec<(&str, &str, &str)> = es.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    graph(&vrefs, &erefs)
}

/// Betti numbers of a graph from vertex/edge/component counts.
fn graph_betti(g: &GraphSpec) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..g.vertices).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut components = g.vertices;
    for &(s, t) in &g.edges {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    vec![components, g.edges.len() + components - g.vertices]
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_and_cones_are_complexes(gs in prop::collection::vec(graph_strategy(), 1..=3), coned in any::<bool>()) {
        let mut x = build_graph(&gs[0], "g0");
        for (i, g) in gs.iter().enumerate().skip(1) {
            x = product(&x, &build_graph(g, &format!("g{i}")));
        }
        if coned {
            x = cone(&x, "apex");
        }
        let report = x.check_complex().unwrap();
        prop_assert!(report.passed, "{:?}", report.witness);
        // boundaries never mention degenerate cells
        for c in x.cubes() {
            for label in x.boundary(&c.label).unwrap().labels() {
                prop_assert!(x.contains(label));
            }
        }
    }

    #[test]
    fn kunneth_for_graph_products(g in graph_strategy(), h in graph_strategy()) {
        let x = build_graph(&g, "x");
        let y = build_graph(&h, "y");
        let betti = product(&x, &y).chain_complex().unwrap().betti(2).unwrap();
        prop_assert_eq!(betti, convolve(&graph_betti(&g), &graph_betti(&h)));
    }

    #[test]
    fn product_is_associative(a in graph_strategy(), b in graph_strategy(), c in graph_strategy()) {
        let (x, y, z) = (build_graph(&a, "a"), build_graph(&b, "b"), build_graph(&c, "c"));
        prop_assert_eq!(product(&product(&x, &y), &z), product(&x, &product(&y, &z)));
    }

    #[test]
    fn leibniz_rule(a in graph_strategy(), b in graph_strategy(), coned in any::<bool>()) {
        let mut x = build_graph(&a, "a");
        if coned {
            x = cone(&x, "o");
        }
        let y = product(&build_graph(&b, "b"), &standard_cube(1));
        let xy = product(&x, &y);
        for s in x.cubes() {
            for t in y.cubes() {
                let sigma = Chain::generator(s.label.clone());
                let tau = Chain::generator(t.label.clone());
                let lhs = xy.boundary_chain(&cross(&x, &y, &sigma, &tau).unwrap()).unwrap();
                let first = cross(&x, &y, &x.boundary(&s.label).unwrap(), &tau).unwrap();
                let second = cross(&x, &y, &sigma, &y.boundary(&t.label).unwrap()).unwrap();
                let sign = if s.dim % 2 == 0 { 1 } else { -1 };
                let mut rhs = first;
                rhs.add_scaled(&second, sign).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn four_cube_passes() {
    let c = standard_cube(4);
    assert_eq!(c.len(), 81);
    assert!(c.check_complex().unwrap().passed);
}

#[test]
fn torus_from_commuting_loops_matches_product() {
    let circle_a = graph(&["v"], &[("a", "v", "v")]);
    let circle_b = graph(&["w"], &[("b", "w", "w")]);
    let t2 = product(&circle_a, &circle_b);
    assert!(t2.check_complex().unwrap().passed);
    assert_eq!(t2.chain_complex().unwrap().betti(2).unwrap(), vec![1, 2, 1]);
    assert_eq!(torus().chain_complex().unwrap().betti(2).unwrap(), vec![1, 2, 1]);
}

#[test]
fn violated_face_identity_is_reported() {
    // a square whose corners disagree: ∂_{1,0}∂_{2,0} = p ≠ q = ∂_{1,0}∂_{1,0}
    let x = PresentedCubicalSet::new([
        CubeSpec { label: "p".into(), dim: 0, faces: vec![] },
        CubeSpec { label: "q".into(), dim: 0, faces: vec![] },
        CubeSpec { label: "e".into(), dim: 1, faces: vec![[Cell::cube("p"), Cell::cube("p")]] },
        CubeSpec { label: "f".into(), dim: 1, faces: vec![[Cell::cube("q"), Cell::cube("q")]] },
        CubeSpec { label: "t".into(), dim: 2, faces: vec![[Cell::cube("e"), Cell::cube("e")], [Cell::cube("f"), Cell::cube("f")]] },
    ])
    .unwrap();
    let report = x.check_complex().unwrap();
    assert!(!report.passed);
    match report.witness {
        Some(CubicalWitness::FaceIdentity { cube, k, l, .. }) => {
            assert_eq!((cube.as_str(), k, l), ("t", 1, 2));
        }
        other => panic!("unexpected witness {other:?}"),
    }
}
