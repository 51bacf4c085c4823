use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PontryaginError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDecl {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A homotopy between two length-2 edge paths with common endpoints; paths
/// are listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDecl {
    pub top: [String; 2],
    pub bottom: [String; 2],
}

/// A higher homotopy cell; each face `"k,ε"` is a word of edge ids and cell
/// references (`[id]` for cells, `[i]` for the i-th square).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDecl {
    pub id: String,
    pub dim: usize,
    pub faces: BTreeMap<String, Vec<String>>,
}

/// On-disk form of a digraph with declared squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
    #[serde(default)]
    pub squares: Vec<SquareDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellDecl>,
}

/// A validated digraph with squares and higher cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub(crate) file: DigraphFile,
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    !s.is_empty() && !s.contains(['.', '[', ']', '@'])
}

impl Digraph {
    pub fn new(file: DigraphFile) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &file.vertices {
            if !valid_identifier(v) {
                return Err(PontryaginError::BadIdentifier(v.clone()));
            }
            if !seen.insert(format!("v:{v}")) {
                return Err(PontryaginError::Duplicate(v.clone()));
            }
        }
        for e in &file.edges {
            if !valid_identifier(&e.id) {
                return Err(PontryaginError::BadIdentifier(e.id.clone()));
            }
            if !seen.insert(format!("e:{}", e.id)) {
                return Err(PontryaginError::Duplicate(e.id.clone()));
            }
            for v in [&e.src, &e.dst] {
                if !file.vertices.contains(v) {
                    return Err(PontryaginError::UnknownVertex(v.clone()));
                }
            }
        }
        let edge = |id: &str| file.edges.iter().find(|e| e.id == id);
        for (index, sq) in file.squares.iter().enumerate() {
            let bad = |reason: String| PontryaginError::MalformedSquare { index, reason };
            let path = |p: &[String; 2]| -> Result<(String, String)> {
                let a = edge(&p[0]).ok_or_else(|| bad(format!("unknown edge `{}`", p[0])))?;
                let b = edge(&p[1]).ok_or_else(|| bad(format!("unknown edge `{}`", p[1])))?;
                if a.dst != b.src {
                    return Err(bad(format!("`{}` does not end where `{}` starts", a.id, b.id)));
                }
                Ok((a.src.clone(), b.dst.clone()))
            };
            if path(&sq.top)? != path(&sq.bottom)? {
                return Err(bad("top and bottom paths have different endpoints".into()));
            }
        }
        for c in &file.cells {
            // numeric ids are reserved for squares, which are labelled `[i]`
            if !valid_identifier(&c.id) || c.id.chars().all(|ch| ch.is_ascii_digit()) {
                return Err(PontryaginError::BadIdentifier(c.id.clone()));
            }
            if !seen.insert(format!("c:{}", c.id)) {
                return Err(PontryaginError::Duplicate(c.id.clone()));
            }
        }
        Ok(Self { file })
    }

    pub fn file(&self) -> &DigraphFile {
        &self.file
    }

    pub fn vertices(&self) -> &[String] {
        &self.file.vertices
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(id: &str, s: &str, t: &str) -> EdgeDecl {
        EdgeDecl { id: id.into(), src: s.into(), dst: t.into() }
    }

    #[test]
    fn rejects_square_with_different_endpoints() {
        let file = DigraphFile {
            vertices: vec!["u".into(), "v".into(), "w".into()],
            edges: vec![edge("a", "u", "v"), edge("b", "v", "w"), edge("c", "u", "v"), edge("d", "v", "v")],
            squares: vec![SquareDecl { top: ["a".into(), "b".into()], bottom: ["c".into(), "d".into()] }],
            cells: vec![],
        };
        assert!(matches!(Digraph::new(file), Err(PontryaginError::MalformedSquare { index: 0, .. })));
    }

    #[test]
    fn rejects_broken_path() {
        let file = DigraphFile {
            vertices: vec!["u".into(), "v".into()],
            edges: vec![edge("a", "u", "v"), edge("b", "u", "v")],
            squares: vec![SquareDecl { top: ["a".into(), "b".into()], bottom: ["a".into(), "b".into()] }],
            cells: vec![],
        };
        assert!(matches!(Digraph::new(file), Err(PontryaginError::MalformedSquare { .. })));
    }

    #[test]
    fn rejects_bad_identifiers() {
        let file = DigraphFile { vertices: vec!["u".into()], edges: vec![edge("a.b", "u", "u")], squares: vec![], cells: vec![] };
        assert!(matches!(Digraph::new(file), Err(PontryaginError::BadIdentifier(_))));
    }
}
