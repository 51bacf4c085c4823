use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{compositions, Result, StrataError};

/// A run `first..=last` of the original segments `σ_first, …, σ_last`
/// concatenated by merge events.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub first: usize,
    pub last: usize,
}

impl Segment {
    pub fn single(i: usize) -> Self {
        Self { first: i, last: i }
    }

    pub fn merges(&self) -> usize {
        self.last - self.first
    }
}

/// A stratum of `Z̄_{2d}` in normal form.
///
/// `Z` is a half-plane carrying a word of (possibly merged) segments; `Disc`
/// is a level-1 disc of `R̄_r` whose `r ≥ 2` inputs are further strata.
/// A bubble inside a block is the same stratum as the corresponding Stasheff
/// degeneration of the enclosing disc, which the normal form makes literal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StratumTree {
    Z(Vec<Segment>),
    Disc(Vec<StratumTree>),
}

/// The interior `Z_{2d}`.
pub fn open_z(d: usize) -> Result<StratumTree> {
    if d < 1 {
        return Err(StrataError::TooSmall { d, min: 1 });
    }
    Ok(StratumTree::Z((1..=d).map(Segment::single).collect()))
}

impl StratumTree {
    /// Merge events plus disc vertices.
    pub fn codim(&self) -> usize {
        match self {
            StratumTree::Z(segs) => segs.iter().map(Segment::merges).sum(),
            StratumTree::Disc(ch) => 1 + ch.iter().map(Self::codim).sum::<usize>(),
        }
    }

    /// `Σ_Z (#segments − 1) + Σ_disc (r − 2)`.
    pub fn dim(&self) -> usize {
        match self {
            StratumTree::Z(segs) => segs.len() - 1,
            StratumTree::Disc(ch) => ch.len() - 2 + ch.iter().map(Self::dim).sum::<usize>(),
        }
    }

    /// The original segments covered, as `(first, last)`.
    pub fn span(&self) -> (usize, usize) {
        match self {
            StratumTree::Z(segs) => (segs[0].first, segs[segs.len() - 1].last),
            StratumTree::Disc(ch) => (ch[0].span().0, ch[ch.len() - 1].span().1),
        }
    }

    /// All strata of one higher codimension in the closure of this one.
    pub fn facets(&self) -> Vec<StratumTree> {
        let mut out = Vec::new();
        match self {
            StratumTree::Z(segs) => {
                for k in 0..segs.len().saturating_sub(1) {
                    let mut s = segs.clone();
                    let next = s.remove(k + 1);
                    s[k].last = next.last;
                    out.push(StratumTree::Z(s));
                }
                for sizes in compositions(segs.len(), 2) {
                    let mut start = 0;
                    let children = sizes
                        .iter()
                        .map(|&n| {
                            let c = StratumTree::Z(segs[start..start + n].to_vec());
                            start += n;
                            c
                        })
                        .collect();
                    out.push(StratumTree::Disc(children));
                }
            }
            StratumTree::Disc(ch) => {
                let r = ch.len();
                for s in 2..r {
                    for i in 0..=r - s {
                        let mut c = ch[..i].to_vec();
                        c.push(StratumTree::Disc(ch[i..i + s].to_vec()));
                        c.extend_from_slice(&ch[i + s..]);
                        out.push(StratumTree::Disc(c));
                    }
                }
                for (l, child) in ch.iter().enumerate() {
                    for f in child.facets() {
                        let mut c = ch.clone();
                        c[l] = f;
                        out.push(StratumTree::Disc(c));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            write!(f, "{}", self.first)
        } else {
            write!(f, "{}-{}", self.first, self.last)
        }
    }
}

impl fmt::Display for StratumTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumTree::Z(segs) => {
                let s: Vec<String> = segs.iter().map(|s| s.to_string()).collect();
                write!(f, "Z[{}]", s.join(","))
            }
            StratumTree::Disc(ch) => {
                let s: Vec<String> = ch.iter().map(|c| c.to_string()).collect();
                write!(f, "D({})", s.join(","))
            }
        }
    }
}

/// A codimension-1 stratum of `Z̄_{2d}` with its type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ZFacet {
    /// Markings `z_{2k}, z_{2k+1}` collide: segments `k, k+1` merge.
    Merge { k: usize, stratum: StratumTree },
    /// Bubbling into consecutive blocks of the given sizes.
    Bubble { blocks: Vec<usize>, stratum: StratumTree },
}

impl ZFacet {
    pub fn stratum(&self) -> &StratumTree {
        match self {
            ZFacet::Merge { stratum, .. } | ZFacet::Bubble { stratum, .. } => stratum,
        }
    }
}

/// Type-1 strata `Merge(k)`, `k = 1..d−1`, then type-2 strata, one per
/// partition of `1..d` into `r ≥ 2` consecutive blocks.
pub fn codim1_z(d: usize) -> Result<Vec<ZFacet>> {
    let open = open_z(d)?;
    let mut out = Vec::new();
    for f in open.facets() {
        match &f {
            StratumTree::Z(segs) => {
                let k = segs.iter().position(|s| s.merges() == 1).expect("one merge") + 1;
                out.push(ZFacet::Merge { k, stratum: f });
            }
            StratumTree::Disc(ch) => {
                let blocks = ch.iter().map(|c| c.span().1 - c.span().0 + 1).collect();
                out.push(ZFacet::Bubble { blocks, stratum: f });
            }
        }
    }
    Ok(out)
}

/// All strata of `Z̄_{2d}` by codimension, in canonical order.
pub fn strata_z(d: usize) -> Result<Vec<BTreeSet<StratumTree>>> {
    let open = open_z(d)?;
    let mut levels = vec![BTreeSet::from([open])];
    loop {
        let next: BTreeSet<StratumTree> = levels.last().expect("nonempty").par_iter().flat_map_iter(|s| s.facets()).collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(levels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mod2Report {
    pub d: usize,
    pub passed: bool,
    pub codim1: usize,
    pub codim2: usize,
    /// Codimension-2 strata not lying in exactly two codimension-1 closures.
    pub failures: Vec<(String, usize)>,
}

/// Every codimension-2 stratum must lie in exactly two codimension-1
/// closures.
pub fn check_mod2_z(d: usize) -> Result<Mod2Report> {
    let open = open_z(d)?;
    let codim1: Vec<StratumTree> = {
        let set: BTreeSet<_> = open.facets().into_iter().collect();
        set.into_iter().collect()
    };
    let incidences: Vec<BTreeSet<StratumTree>> = codim1.par_iter().map(|f| f.facets().into_iter().collect()).collect();
    let mut count: BTreeMap<StratumTree, usize> = BTreeMap::new();
    for set in incidences {
        for g in set {
            *count.entry(g).or_default() += 1;
        }
    }
    let failures: Vec<(String, usize)> = count.iter().filter(|(_, &n)| n != 2).map(|(s, &n)| (s.to_string(), n)).collect();
    Ok(Mod2Report { d, passed: failures.is_empty(), codim1: codim1.len(), codim2: count.len(), failures })
}
