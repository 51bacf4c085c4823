use std::collections::BTreeMap;

use ainf_core::ainfty::check_ainfty;
use ainf_core::cubical::PresentedCubicalSet;
use ainf_core::pontryagin::{
    check_associativity, check_dg_identity, fixtures, perturbation_sweep, Digraph, DigraphFile, EdgeDecl, LoopModel, PontryaginCategory,
    PontryaginError, SquareDecl, ThirdTermSign,
};
use ainf_core::Chain;
use proptest::prelude::*;

fn model(g: &Digraph, cap: usize) -> LoopModel {
    LoopModel::from_digraph(g, cap).unwrap()
}

fn h(set: &PresentedCubicalSet, degree: i64) -> usize {
    set.chain_complex().unwrap().homology(degree).unwrap().rank
}

// Union-find over edge paths `a → a` of length ≤ cap, joined by single
// square substitutions; independent of the cubical machinery.
fn loop_classes(file: &DigraphFile, a: &str, cap: usize) -> usize {
    let mut paths: Vec<Vec<String>> = Vec::new();
    let mut stack: Vec<(String, Vec<String>)> = vec![(a.to_string(), vec![])];
    while let Some((v, p)) = stack.pop() {
        if v == a {
            paths.push(p.clone());
        }
        if p.len() < cap {
            for e in file.edges.iter().filter(|e| e.src == v) {
                let mut q = p.clone();
                q.push(e.id.clone());
                stack.push((e.dst.clone(), q));
            }
        }
    }
    let index: BTreeMap<Vec<String>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..paths.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (i, p) in paths.iter().enumerate() {
        for k in 0..p.len().saturating_sub(1) {
            for sq in &file.squares {
                if p[k] == sq.top[0] && p[k + 1] == sq.top[1] {
                    let mut q = p.clone();
                    q[k] = sq.bottom[0].clone();
                    q[k + 1] = sq.bottom[1].clone();
                    let j = index[&q];
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    (0..paths.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[test]
fn loop_edge_has_powers_and_no_differential() {
    let m = model(&fixtures::loop_edge(), 4);
    let set = m.path_space("v", "v").unwrap().unwrap();
    let labels: Vec<&str> = set.cubes().iter().map(|c| c.label.as_str()).collect();
    for l in ["id@v", "e", "e.e", "e.e.e", "e.e.e.e"] {
        assert!(labels.contains(&l), "{l}");
    }
    assert_eq!(set.len(), 5);
    for c in set.cubes() {
        assert!(m.boundary(&c.label).unwrap().is_zero());
    }
}

#[test]
fn square_swaps_and_signs() {
    let m = model(&fixtures::commuting_square(), 4);
    let p = PontryaginCategory::new(&m);
    assert_eq!(p.mu1(&Chain::generator("[0]")).unwrap(), Chain::from_terms([("a.b", -1), ("c.d", 1)]).unwrap());
    assert!(p.mu1(&Chain::generator("a.b")).unwrap().is_zero());
    // μ_2(p, h) with |h| = 1
    let r = p.mu2(&Chain::generator("id@x"), &Chain::generator("[0]")).unwrap();
    assert_eq!(r, Chain::term("[0]", -1));
    let r = p.mu2(&Chain::generator("b"), &Chain::generator("a")).unwrap();
    assert_eq!(r, Chain::generator("a.b"));
    assert!(p.mu2(&Chain::zero(), &Chain::generator("a")).unwrap().is_zero());
    assert!(matches!(p.mu2(&Chain::generator("a"), &Chain::generator("b")), Err(PontryaginError::NotComposable { .. })));
    assert!(matches!(p.mu1(&Chain::from_terms([("a.b", 1), ("[0]", 1)]).unwrap()), Err(PontryaginError::Inhomogeneous)));
}

#[test]
fn concat_with_fixed_path_is_a_longer_cube() {
    let g = Digraph::new(DigraphFile {
        vertices: vec!["u".into(), "v".into(), "w".into(), "x".into(), "y".into()],
        edges: [("a", "u", "v"), ("b", "v", "x"), ("c", "u", "w"), ("d", "w", "x"), ("e", "x", "y")]
            .iter()
            .map(|&(i, s, t)| EdgeDecl { id: i.into(), src: s.into(), dst: t.into() })
            .collect(),
        squares: vec![SquareDecl { top: ["a".into(), "b".into()], bottom: ["c".into(), "d".into()] }],
        cells: vec![],
    })
    .unwrap();
    let m = model(&g, 3);
    let p = PontryaginCategory::new(&m);
    let r = p.mu2(&Chain::generator("e"), &Chain::generator("[0]")).unwrap();
    assert_eq!(r, Chain::term("[0].e", -1));
    assert_eq!(m.cube("[0].e").unwrap().dim, 1);
    assert_eq!(m.boundary("[0].e").unwrap(), Chain::from_terms([("a.b.e", -1), ("c.d.e", 1)]).unwrap());
}

#[test]
fn dg_identity_and_perturbations_on_fixtures() {
    for (g, cap) in
        [(fixtures::commuting_square(), 4), (fixtures::two_loops(), 5), (fixtures::filled_square(true), 4), (fixtures::loop_edge(), 4)]
    {
        let m = model(&g, cap);
        let r = check_dg_identity(&m, &ThirdTermSign::Correct).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_associativity(&m).unwrap().passed);
        let sweep = perturbation_sweep(&m).unwrap();
        assert_eq!(sweep.detected, sweep.injected);
        assert!(sweep.undetected.is_empty());
    }
    let m = model(&fixtures::two_loops(), 5);
    assert!(perturbation_sweep(&m).unwrap().injected > 0);
    let r = check_dg_identity(&m, &ThirdTermSign::FlipAll).unwrap();
    let f = r.failure.expect("global flip must fail");
    assert!(!f.terms[2].is_zero());
}

#[test]
fn empty_model_passes_vacuously() {
    let g = Digraph::new(DigraphFile { vertices: vec![], edges: vec![], squares: vec![], cells: vec![] }).unwrap();
    let m = model(&g, 3);
    let r = check_dg_identity(&m, &ThirdTermSign::Correct).unwrap();
    assert!(r.passed);
    assert_eq!(r.pairs_checked, 0);
}

#[test]
fn higher_cell_fills_the_square_cycle() {
    let open = model(&fixtures::filled_square(false), 2);
    let closed = model(&fixtures::filled_square(true), 2);
    let so = open.path_space("u", "x").unwrap().unwrap();
    let sc = closed.path_space("u", "x").unwrap().unwrap();
    assert_eq!((h(so, 0), h(so, 1)), (1, 1));
    assert_eq!((h(sc, 0), h(sc, 1), h(sc, 2)), (1, 0, 0));
    for (_, r) in closed.check_cubical().unwrap() {
        assert!(r.passed);
    }
}

#[test]
fn inconsistent_higher_cell_is_reported() {
    let mut file = fixtures::filled_square(true).file().clone();
    let faces = &mut file.cells[0].faces;
    let a = faces["2,0"].clone();
    faces.insert("2,0".into(), faces["2,1"].clone());
    faces.insert("2,1".into(), a);
    let m = model(&Digraph::new(file).unwrap(), 2);
    assert!(m.check_cubical().unwrap().iter().any(|(_, r)| !r.passed));
}

#[test]
fn adapter_satisfies_ainfty_relations() {
    let m = model(&fixtures::two_loops(), 4);
    let c = PontryaginCategory::new(&m).to_ainfty().unwrap();
    assert!(c.is_dg());
    assert!(check_ainfty(&c, 3).unwrap().passed);
}

#[test]
fn json_fixture_loads() {
    let text = r#"{"vertices": ["u", "v", "w", "x"],
        "edges": [{"id": "a", "src": "u", "dst": "v"}, {"id": "b", "src": "v", "dst": "x"},
                  {"id": "c", "src": "u", "dst": "w"}, {"id": "d", "src": "w", "dst": "x"}],
        "squares": [{"top": ["a", "b"], "bottom": ["c", "d"]}]}"#;
    let file: DigraphFile = serde_json::from_str(text).unwrap();
    assert_eq!(Digraph::new(file).unwrap(), fixtures::commuting_square());
}

#[test]
fn loop_classes_match_oracle_on_fixture() {
    let g = fixtures::two_loops();
    let cap = 5;
    let m = model(&g, cap);
    for v in ["p", "q", "z"] {
        let set = m.path_space(v, v).unwrap().unwrap();
        assert_eq!(h(set, 0), loop_classes(g.file(), v, cap), "{v}");
    }
}

fn random_digraph() -> impl Strategy<Value = DigraphFile> {
    (2usize..5, prop::collection::vec((0usize..5, 0usize..5), 1..7), prop::collection::vec(any::<u32>(), 0..6)).prop_map(
        |(nv, raw_edges, picks)| {
            let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let edges: Vec<EdgeDecl> = raw_edges
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| EdgeDecl { id: format!("e{i}"), src: vertices[s % nv].clone(), dst: vertices[t % nv].clone() })
                .collect();
            // all length-2 paths, grouped by endpoints
            let mut by_ends: BTreeMap<(String, String), Vec<[String; 2]>> = BTreeMap::new();
            for e in &edges {
                for f in edges.iter().filter(|f| f.src == e.dst) {
                    by_ends.entry((e.src.clone(), f.dst.clone())).or_default().push([e.id.clone(), f.id.clone()]);
                }
            }
            let groups: Vec<Vec<[String; 2]>> = by_ends.into_values().collect();
            let mut squares = Vec::new();
            if !groups.is_empty() {
                for p in picks {
                    let g = &groups[p as usize % groups.len()];
                    let i = (p as usize / 7) % g.len();
                    let j = (p as usize / 31) % g.len();
                    squares.push(SquareDecl { top: g[i].clone(), bottom: g[j].clone() });
                }
            }
            DigraphFile { vertices, edges, squares, cells: vec![] }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_digraphs_satisfy_dg_identity(file in random_digraph()) {
        let g = Digraph::new(file.clone()).unwrap();
        let m = model(&g, 4);
        for (_, r) in m.check_cubical().unwrap() {
            prop_assert!(r.passed);
        }
        prop_assert!(check_dg_identity(&m, &ThirdTermSign::Correct).unwrap().passed);
        let sweep = perturbation_sweep(&m).unwrap();
        prop_assert_eq!(sweep.detected, sweep.injected);
        prop_assert!(check_associativity(&m).unwrap().passed);
        for v in &file.vertices {
            let set = m.path_space(v, v).unwrap().unwrap();
            prop_assert_eq!(h(set, 0), loop_classes(&file, v, 4));
        }
    }
}

#[test]
fn sweep_agrees_with_full_reruns() {
    let m = model(&fixtures::two_loops(), 3);
    let sweep = perturbation_sweep(&m).unwrap();
    let mut detected = 0;
    let c = PontryaginCategory::new(&m).to_ainfty().unwrap();
    for g2 in c.generators() {
        for g1 in c.generators().iter().filter(|g| g.target == g2.source) {
            if g1.degree == 0 && g2.degree == 0 {
                continue;
            }
            let mode = ThirdTermSign::FlipPair { second: g2.label.clone(), first: g1.label.clone() };
            if let Some(f) = check_dg_identity(&m, &mode).unwrap().failure {
                assert_eq!((f.second.as_str(), f.first.as_str()), (g2.label.as_str(), g1.label.as_str()));
                detected += 1;
            }
        }
    }
    assert!(detected > 0);
    assert_eq!(detected, sweep.detected);
}
