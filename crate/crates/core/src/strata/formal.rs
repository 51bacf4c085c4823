use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::parity::{LinearForm, ParityPoly};
use super::{compositions, Result, StrataError};

/// An input cube `σ_index`, or its boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub index: usize,
    pub boundary: bool,
}

/// A formal generator: a product of fundamental chains.
///
/// `Disc` is `[M̄(σ-word; out)]` over a half-plane whose segments are words
/// of pieces (a merged segment carries the concatenated cube). `Node` is
/// `[M̄(out; x_1, …, x_k)]` times the chains producing its inputs. Chords
/// are named; canonical trees name them by tree address.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormalTree {
    Disc { out: String, segments: Vec<Vec<Piece>> },
    Node { out: String, children: Vec<FormalTree> },
}

pub type FormalChain = BTreeMap<FormalTree, i64>;

/// `[M̄(σ_1, …, σ_d; x)]`.
pub fn open_formal(d: usize) -> Result<FormalTree> {
    if d < 1 {
        return Err(StrataError::TooSmall { d, min: 1 });
    }
    Ok(FormalTree::Disc { out: "x".into(), segments: (1..=d).map(|i| vec![Piece { index: i, boundary: false }]).collect() })
}

fn sigma(i: usize) -> String {
    format!("s{i}")
}

fn piece_degree(p: &Piece) -> LinearForm {
    let mut f = LinearForm::var(sigma(p.index));
    if p.boundary {
        f.add_constant(1);
    }
    f
}

fn segment_degree(seg: &[Piece]) -> LinearForm {
    LinearForm::sum(&seg.iter().map(piece_degree).collect::<Vec<_>>())
}

impl FormalTree {
    pub fn out(&self) -> &str {
        match self {
            FormalTree::Disc { out, .. } | FormalTree::Node { out, .. } => out,
        }
    }

    /// Dimension modulo 2: `Σ|σ| + μ(x) + d − 1` for a disc and
    /// `|x_0| − Σ|x_j| + k − 2` for a node, plus its inputs' chains.
    pub fn dim_parity(&self) -> LinearForm {
        match self {
            FormalTree::Disc { out, segments } => {
                let mut f = LinearForm::var(out.clone());
                for s in segments {
                    f.add(&segment_degree(s));
                }
                f.add_constant(segments.len() as i64 - 1);
                f
            }
            FormalTree::Node { out, children } => {
                let mut f = LinearForm::var(out.clone());
                for c in children {
                    f.add(&LinearForm::var(c.out()));
                    f.add(&c.dim_parity());
                }
                f.add_constant(children.len() as i64);
                f
            }
        }
    }

    fn chord_names(&self, out: &mut Vec<String>) {
        out.push(self.out().to_string());
        if let FormalTree::Node { children, .. } = self {
            for c in children {
                c.chord_names(out);
            }
        }
    }

    fn relabel(&self, address: &str, map: &mut HashMap<String, String>) -> FormalTree {
        map.insert(self.out().to_string(), address.to_string());
        match self {
            FormalTree::Disc { segments, .. } => FormalTree::Disc { out: address.into(), segments: segments.clone() },
            FormalTree::Node { children, .. } => FormalTree::Node {
                out: address.into(),
                children: children.iter().enumerate().map(|(l, c)| c.relabel(&format!("{address}.{}", l + 1), map)).collect(),
            },
        }
    }

    /// Renames chords by tree address (`x`, `x.1`, `x.1.2`, …), returning the
    /// renaming.
    pub fn canonical(&self) -> (FormalTree, HashMap<String, String>) {
        let mut map = HashMap::new();
        let t = self.relabel("x", &mut map);
        (t, map)
    }

    fn codim(&self) -> usize {
        match self {
            FormalTree::Disc { segments, .. } => {
                let pieces: usize = segments.iter().map(Vec::len).sum();
                let cubes = segments.iter().flatten().filter(|p| p.boundary).count();
                pieces - segments.len() + cubes
            }
            FormalTree::Node { children, .. } => 1 + children.iter().map(Self::codim).sum::<usize>(),
        }
    }
}

struct Fresh {
    prefix: &'static str,
    next: usize,
}

impl Fresh {
    fn name(&mut self) -> String {
        self.next += 1;
        format!("{}{}", self.prefix, self.next)
    }
}

// the sign exponent of a bubble into blocks of the given sizes, with new
// chords x_1..x_r
fn dagger(segments: &[Vec<Piece>], sizes: &[usize], chords: &[String]) -> ParityPoly {
    let r = sizes.len();
    let mut starts = vec![0];
    for s in sizes {
        starts.push(starts.last().unwrap() + s);
    }
    let block_degree =
        |k: usize| LinearForm::sum(&segments[starts[k]..starts[k + 1]].iter().map(|s| segment_degree(s)).collect::<Vec<_>>());
    let mut p = ParityPoly::zero();
    // Σ_k d_k [Σ μ(σ) over earlier blocks + Σ_{j<k} μ(x_j)]
    for k in 0..r {
        let mut f = LinearForm::default();
        for b in 0..k {
            f.add(&block_degree(b));
            f.add(&LinearForm::var(chords[b].clone()));
        }
        p.add(&ParityPoly::from_linear(&f.scaled(sizes[k] as i64)));
    }
    // Σ_{k<r} μ(x_k) Σ_k, with Σ_k over the last k blocks
    for k in 1..r {
        let tail = LinearForm::sum(&(r - k..r).map(block_degree).collect::<Vec<_>>());
        p.add(&ParityPoly::product(&LinearForm::var(chords[k - 1].clone()), &tail));
    }
    // Σ_k (Σ_{i≤k} d_i)(Σ_{i<k} d_i)
    let c: i64 = (1..=r).map(|k| (starts[k] * starts[k - 1]) as i64).sum();
    p.add(&ParityPoly::from_linear(&LinearForm::constant(c)));
    p
}

fn boundary_symbolic(t: &FormalTree, fresh: &mut Fresh) -> Vec<(FormalTree, ParityPoly)> {
    let mut out = Vec::new();
    match t {
        FormalTree::Disc { out: x, segments } => {
            let m = segments.len();
            // merges, each with sign (−1)^{2d+1} = −1
            for k in 0..m.saturating_sub(1) {
                let mut segs = segments.clone();
                let next = segs.remove(k + 1);
                segs[k].extend(next);
                out.push((FormalTree::Disc { out: x.clone(), segments: segs }, ParityPoly::one()));
            }
            // bubbles into r ≥ 1 blocks; r = 1 is breaking at the output
            for sizes in compositions(m, 1) {
                let chords: Vec<String> = sizes.iter().map(|_| fresh.name()).collect();
                let mut start = 0;
                let children = sizes
                    .iter()
                    .zip(&chords)
                    .map(|(&n, y)| {
                        let c = FormalTree::Disc { out: y.clone(), segments: segments[start..start + n].to_vec() };
                        start += n;
                        c
                    })
                    .collect();
                out.push((FormalTree::Node { out: x.clone(), children }, dagger(segments, &sizes, &chords)));
            }
            // cube faces, Koszul-signed past the earlier inputs
            let mut before = LinearForm::default();
            for (s, seg) in segments.iter().enumerate() {
                for (p, piece) in seg.iter().enumerate() {
                    if !piece.boundary {
                        let mut segs = segments.clone();
                        segs[s][p].boundary = true;
                        out.push((FormalTree::Disc { out: x.clone(), segments: segs }, ParityPoly::from_linear(&before)));
                    }
                    before.add(&piece_degree(piece));
                }
            }
        }
        FormalTree::Node { out: x, children } => {
            let k = children.len();
            // product written A_k × ⋯ × A_1 × N
            for l in 0..k {
                let after = LinearForm::sum(&children[l + 1..].iter().map(|c| c.dim_parity()).collect::<Vec<_>>());
                for (b, sign) in boundary_symbolic(&children[l], fresh) {
                    let mut ch = children.clone();
                    ch[l] = b;
                    out.push((FormalTree::Node { out: x.clone(), children: ch }, sign.plus(&ParityPoly::from_linear(&after))));
                }
            }
            let all = LinearForm::sum(&children.iter().map(|c| c.dim_parity()).collect::<Vec<_>>());
            for j in 1..=k {
                for i in 0..=k - j {
                    let y = fresh.name();
                    let inner = FormalTree::Node { out: y, children: children[i..i + j].to_vec() };
                    let mut ch = children[..i].to_vec();
                    ch.push(inner);
                    ch.extend_from_slice(&children[i + j..]);
                    // ✠_i = Σ_{l≤i} |x_l| − i
                    let mut e = all.clone();
                    for c in &children[..i] {
                        e.add(&LinearForm::var(c.out()));
                    }
                    e.add_constant(i as i64);
                    out.push((FormalTree::Node { out: x.clone(), children: ch }, ParityPoly::from_linear(&e)));
                }
            }
        }
    }
    out
}

fn canonical_term(t: &FormalTree, sign: &ParityPoly) -> (FormalTree, ParityPoly) {
    let (c, map) = t.canonical();
    let renamed = sign.rename(&|v| map.get(v).cloned().unwrap_or_else(|| v.to_string()));
    (c, renamed)
}

fn lookup<'a>(assign: &'a BTreeMap<String, i64>) -> impl Fn(&str) -> Option<i64> + 'a {
    move |v| assign.get(v).copied()
}

/// The formal boundary of a chain of canonical generators. Merges carry
/// `(−1)^{2d+1}`, bubbles `(−1)^†`, node breakings `(−1)^{✠}` and every
/// factor of a product the Koszul sign of the factors written before it.
pub fn boundary_formal(chain: &FormalChain, assign: &BTreeMap<String, i64>) -> Result<FormalChain> {
    let value = lookup(assign);
    let mut out = FormalChain::new();
    for (t, &coeff) in chain {
        let mut fresh = Fresh { prefix: "#", next: 0 };
        for (b, sign) in boundary_symbolic(t, &mut fresh) {
            let (c, poly) = canonical_term(&b, &sign);
            let s = poly.sign(&value).map_err(StrataError::Unassigned)?;
            let e = out.entry(c).or_insert(0);
            *e += s * coeff;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

// every codim-2 term of ∂∂[M̄(σ; x)] with its symbolic sign and the
// intermediate generator it passed through
fn second_boundary(d: usize) -> Result<Vec<(FormalTree, ParityPoly, FormalTree)>> {
    let open = open_formal(d)?;
    let mut f1 = Fresh { prefix: "y", next: 0 };
    let first = boundary_symbolic(&open, &mut f1);
    Ok(first
        .par_iter()
        .flat_map_iter(|(mid, s1)| {
            let mut f2 = Fresh { prefix: "z", next: 0 };
            let mid_canonical = mid.canonical().0;
            boundary_symbolic(mid, &mut f2).into_iter().map(move |(t, s2)| {
                let (c, poly) = canonical_term(&t, &s1.clone().plus(&s2));
                (c, poly, mid_canonical.clone())
            })
        })
        .collect())
}

/// Every symbol a degree assignment needs for the codimension ≤ 2 strata of
/// `[M̄(σ_1, …, σ_d; x)]`.
pub fn formal_symbols(d: usize) -> Result<BTreeSet<String>> {
    let mut out: BTreeSet<String> = (1..=d).map(sigma).collect();
    for (t, _, _) in second_boundary(d)? {
        let mut names = Vec::new();
        t.chord_names(&mut names);
        out.extend(names);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalMod2Report {
    pub d: usize,
    pub passed: bool,
    pub codim1_terms: usize,
    pub codim2_strata: usize,
    pub failures: Vec<(String, usize)>,
}

/// `∂∂ = 0` modulo 2 for the formal boundary of `[M̄(σ_1, …, σ_d; x)]`:
/// every codimension-2 generator must occur an even number of times.
pub fn check_formal_mod2(d: usize) -> Result<FormalMod2Report> {
    let open = open_formal(d)?;
    let codim1 = boundary_symbolic(&open, &mut Fresh { prefix: "y", next: 0 }).len();
    let mut count: BTreeMap<FormalTree, usize> = BTreeMap::new();
    for (t, _, _) in second_boundary(d)? {
        debug_assert_eq!(t.codim(), 2);
        *count.entry(t).or_default() += 1;
    }
    let failures: Vec<(String, usize)> = count.iter().filter(|(_, &n)| n % 2 != 0).map(|(t, &n)| (t.to_string(), n)).collect();
    Ok(FormalMod2Report { d, passed: failures.is_empty(), codim1_terms: codim1, codim2_strata: count.len(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub stratum: String,
    /// `(intermediate generator, sign)` for each occurrence.
    pub contributions: Vec<(String, i64)>,
    pub residue: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueTable {
    pub d: usize,
    pub assignment: BTreeMap<String, i64>,
    pub rows: Vec<ResidueRow>,
    pub nonzero_residues: usize,
}

/// The signed coefficients of `∂∂[M̄(σ_1, …, σ_d; x)]` under a degree
/// assignment. A diagnostic: the sign formulas are not asserted to close.
pub fn signed_residues(d: usize, assign: &BTreeMap<String, i64>) -> Result<ResidueTable> {
    let value = lookup(assign);
    let mut rows: BTreeMap<FormalTree, Vec<(String, i64)>> = BTreeMap::new();
    for (t, poly, mid) in second_boundary(d)? {
        let s = poly.sign(&value).map_err(StrataError::Unassigned)?;
        rows.entry(t).or_default().push((mid.to_string(), s));
    }
    let rows: Vec<ResidueRow> = rows
        .into_iter()
        .map(|(t, mut contributions)| {
            contributions.sort();
            let residue = contributions.iter().map(|(_, s)| s).sum();
            ResidueRow { stratum: t.to_string(), contributions, residue }
        })
        .collect();
    let nonzero_residues = rows.iter().filter(|r| r.residue != 0).count();
    Ok(ResidueTable { d, assignment: assign.clone(), rows, nonzero_residues })
}

impl fmt::Display for FormalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalTree::Disc { out, segments } => {
                let segs: Vec<String> = segments
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|p| if p.boundary { format!("∂{}", p.index) } else { p.index.to_string() })
                            .collect::<Vec<_>>()
                            .join("·")
                    })
                    .collect();
                write!(f, "M({};{})", segs.join(","), out)
            }
            FormalTree::Node { out, children } => {
                let ch: Vec<String> = children.iter().map(|c| c.to_string()).collect();
                write!(f, "N({};{})", out, ch.join(","))
            }
        }
    }
}
