use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{codim1_r, codim1_z, dim_r, dim_z, Result, StratumTree, ZFacet};

/// The interior identification `Z_{2d} ≅ R_{d+1}` and whether it extends to
/// the compactifications.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StasheffCorrespondence {
    pub d: usize,
    /// Half-plane marking → disc marking: odd points `z_{2i−1}` become inputs
    /// `1..d`, `z_2` input `d+1`, the puncture at `∞` the output.
    pub point_map: Vec<(String, String)>,
    pub dim_z: usize,
    pub dim_r: usize,
    pub z_merge_facets: usize,
    pub z_bubble_facets: usize,
    pub r_facets: usize,
    pub extends_to_boundary: bool,
    pub reason: Option<String>,
}

pub fn z_to_stasheff(d: usize) -> Result<StasheffCorrespondence> {
    let mut point_map: Vec<(String, String)> = (1..=d).map(|i| (format!("z{}", 2 * i - 1), format!("in{i}"))).collect();
    point_map.push(("z2".into(), format!("in{}", d + 1)));
    point_map.push(("∞".into(), "out".into()));
    let z = codim1_z(d)?;
    let merges = z.iter().filter(|f| matches!(f, ZFacet::Merge { .. })).count();
    let r_facets = codim1_r(d + 1)?.len();
    // every facet of R̄_{d+1} is a disc bubble, while Z̄_{2d} has merge
    // facets where a segment collapses without any bubble
    let reason = (merges > 0).then(|| {
        format!("Z̄ has {merges} merge facet(s) and {} bubble facet(s); all {r_facets} facets of R̄_{} are bubbles", z.len() - merges, d + 1)
    });
    Ok(StasheffCorrespondence {
        d,
        point_map,
        dim_z: dim_z(d)?,
        dim_r: dim_r(d + 1)?,
        z_merge_facets: merges,
        z_bubble_facets: z.len() - merges,
        r_facets,
        extends_to_boundary: reason.is_none(),
        reason,
    })
}

/// Weight metadata of one half-plane component of a stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafWeight {
    pub leaf: String,
    pub weight: Ratio<i64>,
}

/// Floer-datum weights: a level-1 disc with `r` inputs gives each input the
/// weight `1/r` (so `1 = w_0 ≥ Σ w_k`), and nested weights multiply.
pub fn weights(t: &StratumTree) -> Vec<LeafWeight> {
    fn walk(t: &StratumTree, w: Ratio<i64>, out: &mut Vec<LeafWeight>) {
        match t {
            StratumTree::Z(_) => out.push(LeafWeight { leaf: t.to_string(), weight: w }),
            StratumTree::Disc(ch) => {
                let each = w / Ratio::from_integer(ch.len() as i64);
                for c in ch {
                    walk(c, each, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(t, Ratio::from_integer(1), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::strata_z;

    #[test]
    fn dimensions_agree_but_boundary_does_not() {
        for d in 1..=6 {
            let c = z_to_stasheff(d).unwrap();
            assert_eq!(c.dim_z, c.dim_r);
            assert_eq!(c.extends_to_boundary, d == 1);
        }
        let c = z_to_stasheff(2).unwrap();
        assert_eq!((c.z_merge_facets, c.z_bubble_facets, c.r_facets), (1, 1, 2));
    }

    #[test]
    fn weights_sum_to_one() {
        for level in strata_z(4).unwrap() {
            for s in level {
                let total: Ratio<i64> = weights(&s).iter().map(|w| w.weight).sum();
                assert_eq!(total, Ratio::from_integer(1));
            }
        }
    }
}
