use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::digraph::Digraph;
use super::{PontryaginError, Result};
use crate::cubical::{Cell, CubeSpec, CubicalReport, PresentedCubicalSet};
use crate::exactalg::Chain;

/// A basic cell of the path space: an edge (dimension 0, length 1), a
/// declared square (dimension 1, length 2) or a declared higher cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub label: String,
    pub src: usize,
    pub dst: usize,
    pub dim: usize,
    pub len: usize,
    /// `faces[k-1] = [face (k,0), face (k,1)]`, each a word of letters.
    pub faces: Vec<[Vec<usize>; 2]>,
}

/// A cube of the path space: a word of letters starting at `start`.
/// The empty word is the constant path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PathCube {
    pub start: usize,
    pub end: usize,
    pub letters: Vec<usize>,
    pub dim: usize,
    pub len: usize,
}

/// The cubical path spaces `Ω(a, b)` of a digraph with squares, truncated
/// at paths of length at most `max_len`.
#[derive(Clone, Debug)]
pub struct LoopModel {
    vertices: Vec<String>,
    letters: Vec<Letter>,
    max_len: usize,
    cubes: Vec<PathCube>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    sets: BTreeMap<(usize, usize), PresentedCubicalSet>,
}

fn parse_word(tokens: &[String], lookup: &HashMap<String, usize>) -> Result<Vec<usize>> {
    tokens.iter().map(|t| lookup.get(t).copied().ok_or_else(|| PontryaginError::UnknownLetter(t.clone()))).collect()
}

impl LoopModel {
    pub fn from_digraph(graph: &Digraph, max_len: usize) -> Result<Self> {
        let file = graph.file();
        let vertex = |v: &str| file.vertices.iter().position(|x| x == v).ok_or_else(|| PontryaginError::UnknownVertex(v.into()));
        let mut letters = Vec::new();
        let mut lookup = HashMap::new();
        for e in &file.edges {
            lookup.insert(e.id.clone(), letters.len());
            letters.push(Letter { label: e.id.clone(), src: vertex(&e.src)?, dst: vertex(&e.dst)?, dim: 0, len: 1, faces: vec![] });
        }
        for (i, sq) in file.squares.iter().enumerate() {
            let top = parse_word(&sq.top, &lookup)?;
            let bottom = parse_word(&sq.bottom, &lookup)?;
            let label = format!("[{i}]");
            lookup.insert(label.clone(), letters.len());
            letters.push(Letter { label, src: letters[top[0]].src, dst: letters[top[1]].dst, dim: 1, len: 2, faces: vec![[top, bottom]] });
        }
        for c in &file.cells {
            let bad = |reason: String| PontryaginError::MalformedCell { id: c.id.clone(), reason };
            if c.dim == 0 {
                return Err(bad("cells must have positive dimension".into()));
            }
            let mut faces = Vec::with_capacity(c.dim);
            let mut shape: Option<(usize, usize, usize)> = None;
            for k in 1..=c.dim {
                let mut pair: [Vec<usize>; 2] = Default::default();
                for (eps, slot) in pair.iter_mut().enumerate() {
                    let key = format!("{k},{eps}");
                    let tokens = c.faces.get(&key).ok_or_else(|| bad(format!("missing face {key}")))?;
                    let word = parse_word(tokens, &lookup)?;
                    if word.is_empty() {
                        return Err(bad(format!("face {key} is empty")));
                    }
                    for w in word.windows(2) {
                        if letters[w[0]].dst != letters[w[1]].src {
                            return Err(bad(format!("face {key} is not a path")));
                        }
                    }
                    let dim: usize = word.iter().map(|&l| letters[l].dim).sum();
                    if dim + 1 != c.dim {
                        return Err(bad(format!("face {key} has dimension {dim}")));
                    }
                    let s =
                        (letters[word[0]].src, letters[*word.last().expect("nonempty")].dst, word.iter().map(|&l| letters[l].len).sum());
                    if *shape.get_or_insert(s) != s {
                        return Err(bad(format!("face {key} has different endpoints or length")));
                    }
                    *slot = word;
                }
                faces.push(pair);
            }
            let (src, dst, len) = shape.expect("dim ≥ 1");
            let label = format!("[{}]", c.id);
            lookup.insert(label.clone(), letters.len());
            letters.push(Letter { label, src, dst, dim: c.dim, len, faces });
        }

        let mut model = Self {
            vertices: file.vertices.clone(),
            letters,
            max_len,
            cubes: Vec::new(),
            labels: Vec::new(),
            index: HashMap::new(),
            sets: BTreeMap::new(),
        };
        model.enumerate();
        model.build_sets()?;
        Ok(model)
    }

    fn enumerate(&mut self) {
        let mut stack: Vec<PathCube> =
            (0..self.vertices.len()).map(|v| PathCube { start: v, end: v, letters: vec![], dim: 0, len: 0 }).collect();
        while let Some(c) = stack.pop() {
            for (i, l) in self.letters.iter().enumerate() {
                if l.src == c.end && c.len + l.len <= self.max_len {
                    let mut letters = c.letters.clone();
                    letters.push(i);
                    stack.push(PathCube { start: c.start, end: l.dst, letters, dim: c.dim + l.dim, len: c.len + l.len });
                }
            }
            let label = self.word_label(c.start, &c.letters);
            self.index.insert(label.clone(), self.cubes.len());
            self.labels.push(label);
            self.cubes.push(c);
        }
    }

    fn word_label(&self, start: usize, word: &[usize]) -> String {
        if word.is_empty() {
            format!("id@{}", self.vertices[start])
        } else {
            word.iter().map(|&l| self.letters[l].label.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    fn build_sets(&mut self) -> Result<()> {
        let mut groups: BTreeMap<(usize, usize), Vec<CubeSpec>> = BTreeMap::new();
        for (i, c) in self.cubes.iter().enumerate() {
            let faces = (1..=c.dim).map(|k| [0u8, 1].map(|eps| Cell::cube(self.word_label(c.start, &self.face_word(c, k, eps))))).collect();
            groups.entry((c.start, c.end)).or_default().push(CubeSpec { label: self.labels[i].clone(), dim: c.dim, faces });
        }
        for (key, specs) in groups {
            self.sets.insert(key, PresentedCubicalSet::new(specs)?);
        }
        Ok(())
    }

    /// The word of the face `(k, ε)`: the letter owning coordinate `k`
    /// replaced by its own face.
    pub fn face_word(&self, c: &PathCube, k: usize, eps: u8) -> Vec<usize> {
        let mut before = 0;
        for (p, &l) in c.letters.iter().enumerate() {
            let d = self.letters[l].dim;
            if k <= before + d {
                let mut out = c.letters[..p].to_vec();
                out.extend_from_slice(&self.letters[l].faces[k - before - 1][eps as usize]);
                out.extend_from_slice(&c.letters[p + 1..]);
                return out;
            }
            before += d;
        }
        panic!("face index {k} out of range for a {}-cube", c.dim)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn cubes(&self) -> &[PathCube] {
        &self.cubes
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| PontryaginError::UnknownCube(label.into()))
    }

    pub fn cube(&self, label: &str) -> Result<&PathCube> {
        Ok(&self.cubes[self.position(label)?])
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices.iter().position(|x| x == v).ok_or_else(|| PontryaginError::UnknownVertex(v.into()))
    }

    /// The cubical set `Ω(a, b)`, if it has any cubes.
    pub fn path_space(&self, a: &str, b: &str) -> Result<Option<&PresentedCubicalSet>> {
        Ok(self.sets.get(&(self.vertex_index(a)?, self.vertex_index(b)?)))
    }

    pub fn path_spaces(&self) -> impl Iterator<Item = ((&str, &str), &PresentedCubicalSet)> {
        self.sets.iter().map(|(&(a, b), s)| ((self.vertices[a].as_str(), self.vertices[b].as_str()), s))
    }

    /// Runs the cubical face-identity and `∂² = 0` checks on every `Ω(a, b)`.
    pub fn check_cubical(&self) -> Result<Vec<((String, String), CubicalReport)>> {
        self.path_spaces().map(|((a, b), s)| Ok(((a.to_string(), b.to_string()), s.check_complex()?))).collect()
    }

    pub fn boundary(&self, label: &str) -> Result<Chain> {
        let c = self.cube(label)?;
        Ok(self.sets[&(c.start, c.end)].boundary(label)?)
    }

    pub fn boundary_chain(&self, chain: &Chain) -> Result<Chain> {
        let mut out = Chain::zero();
        for (l, k) in chain.iter() {
            out.add_scaled(&self.boundary(l)?, k)?;
        }
        Ok(out)
    }

    /// `σ_1` followed by `σ_2`, with the coordinates of `σ_1` first; `None`
    /// when the result exceeds the length cap.
    pub fn concat(&self, first: &str, second: &str) -> Result<Option<String>> {
        let a = self.cube(first)?;
        let b = self.cube(second)?;
        if a.end != b.start {
            return Err(PontryaginError::NotComposable { first: first.into(), second: second.into() });
        }
        if a.len + b.len > self.max_len {
            return Ok(None);
        }
        let mut word = a.letters.clone();
        word.extend_from_slice(&b.letters);
        Ok(Some(self.word_label(a.start, &word)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pontryagin::digraph::{DigraphFile, EdgeDecl, SquareDecl};

    pub(crate) fn square_model(max_len: usize) -> LoopModel {
        let e = |id: &str, s: &str, t: &str| EdgeDecl { id: id.into(), src: s.into(), dst: t.into() };
        let file = DigraphFile {
            vertices: vec!["u".into(), "v".into(), "w".into(), "x".into()],
            edges: vec![e("a", "u", "v"), e("b", "v", "x"), e("c", "u", "w"), e("d", "w", "x")],
            squares: vec![SquareDecl { top: ["a".into(), "b".into()], bottom: ["c".into(), "d".into()] }],
            cells: vec![],
        };
        LoopModel::from_digraph(&Digraph::new(file).unwrap(), max_len).unwrap()
    }

    #[test]
    fn square_boundary_is_bottom_minus_top() {
        let m = square_model(2);
        let d = m.boundary("[0]").unwrap();
        assert_eq!(d, Chain::from_terms([("a.b", -1), ("c.d", 1)]).unwrap());
        assert_eq!(m.cube("[0]").unwrap().dim, 1);
        assert!(m.cube("id@u").unwrap().letters.is_empty());
    }

    #[test]
    fn concatenation_respects_cap() {
        let m = square_model(2);
        assert_eq!(m.concat("a", "b").unwrap().as_deref(), Some("a.b"));
        assert_eq!(m.concat("id@u", "[0]").unwrap().as_deref(), Some("[0]"));
        assert!(m.concat("a", "c").is_err());
    }

    #[test]
    fn path_spaces_are_cubical_complexes() {
        let m = square_model(4);
        for (_, r) in m.check_cubical().unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }
}
