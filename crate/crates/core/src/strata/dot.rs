use std::collections::BTreeMap;
use std::fmt::Write;

use super::{strata_z, Result, StratumTree};

/// Strata of `Z̄_{2d}` by codimension, as display strings.
pub fn hasse_levels(d: usize) -> Result<Vec<Vec<String>>> {
    Ok(strata_z(d)?.into_iter().map(|l| l.iter().map(|s| s.to_string()).collect()).collect())
}

/// The closure poset of `Z̄_{2d}` in Graphviz DOT form, one rank per
/// codimension and an edge from each stratum to its facets.
pub fn hasse_dot(d: usize) -> Result<String> {
    let levels = strata_z(d)?;
    let mut ids: BTreeMap<&StratumTree, usize> = BTreeMap::new();
    let mut out = String::new();
    writeln!(out, "digraph Z{} {{", 2 * d).ok();
    writeln!(out, "  rankdir=TB;").ok();
    for (c, level) in levels.iter().enumerate() {
        writeln!(out, "  {{ rank=same;").ok();
        for s in level {
            let id = ids.len();
            ids.insert(s, id);
            writeln!(out, "    n{id} [label=\"{s}\\ncodim {c}\"];").ok();
        }
        writeln!(out, "  }}").ok();
    }
    for level in &levels {
        for s in level {
            let mut targets: Vec<usize> = s.facets().iter().map(|f| ids[f]).collect();
            targets.sort_unstable();
            targets.dedup();
            for t in targets {
                writeln!(out, "  n{} -> n{t};", ids[s]).ok();
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
