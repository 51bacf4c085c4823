//! Small digraph fixtures.

use std::collections::BTreeMap;

use super::{CellDecl, Digraph, DigraphFile, EdgeDecl, SquareDecl};

fn edge(id: &str, s: &str, t: &str) -> EdgeDecl {
    EdgeDecl { id: id.into(), src: s.into(), dst: t.into() }
}

fn square(top: [&str; 2], bottom: [&str; 2]) -> SquareDecl {
    SquareDecl { top: top.map(String::from), bottom: bottom.map(String::from) }
}

/// One vertex with one loop edge `e`.
pub fn loop_edge() -> Digraph {
    Digraph::new(DigraphFile { vertices: vec!["v".into()], edges: vec![edge("e", "v", "v")], squares: vec![], cells: vec![] })
        .expect("fixture")
}

/// The commuting square `a·b ~ c·d` from `u` to `x`.
pub fn commuting_square() -> Digraph {
    Digraph::new(DigraphFile {
        vertices: vec!["u".into(), "v".into(), "w".into(), "x".into()],
        edges: vec![edge("a", "u", "v"), edge("b", "v", "x"), edge("c", "u", "w"), edge("d", "w", "x")],
        squares: vec![square(["a", "b"], ["c", "d"])],
        cells: vec![],
    })
    .expect("fixture")
}

/// Two vertices joined both ways, with loops at each end and two squares
/// that make loops commute past the connecting edges. Plus an isolated
/// vertex carrying a square of its own.
pub fn two_loops() -> Digraph {
    Digraph::new(DigraphFile {
        vertices: vec!["p".into(), "q".into(), "z".into()],
        edges: vec![
            edge("f", "p", "q"),
            edge("g", "q", "p"),
            edge("l", "p", "p"),
            edge("m", "q", "q"),
            edge("s", "z", "z"),
            edge("t", "z", "z"),
        ],
        squares: vec![square(["l", "f"], ["f", "m"]), square(["g", "l"], ["m", "g"]), square(["s", "t"], ["t", "s"])],
        cells: vec![],
    })
    .expect("fixture")
}

/// Four parallel length-2 routes `p_i = a_i·b_i` from `u` to `x`, squares
/// `p_1~p_2`, `p_3~p_4`, `p_1~p_3`, `p_2~p_4`, and, when `filled`, a 2-cell
/// bounded by those four squares.
pub fn filled_square(filled: bool) -> Digraph {
    let mut vertices = vec!["u".to_string(), "x".to_string()];
    let mut edges = Vec::new();
    for i in 1..=4 {
        let m = format!("m{i}");
        edges.push(edge(&format!("a{i}"), "u", &m));
        edges.push(edge(&format!("b{i}"), &m, "x"));
        vertices.push(m);
    }
    let p = |i: usize| [format!("a{i}"), format!("b{i}")];
    let sq = |i: usize, j: usize| SquareDecl { top: p(i), bottom: p(j) };
    let cells = if filled {
        let faces: BTreeMap<String, Vec<String>> = [("1,0", "[0]"), ("1,1", "[1]"), ("2,0", "[2]"), ("2,1", "[3]")]
            .into_iter()
            .map(|(k, v)| (k.to_string(), vec![v.to_string()]))
            .collect();
        vec![CellDecl { id: "H".into(), dim: 2, faces }]
    } else {
        vec![]
    };
    Digraph::new(DigraphFile { vertices, edges, squares: vec![sq(1, 2), sq(3, 4), sq(1, 3), sq(2, 4)], cells }).expect("fixture")
}
