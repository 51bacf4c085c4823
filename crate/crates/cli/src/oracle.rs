//! Independent enumerations used as oracles by the suites.

use std::collections::BTreeMap;

/// Planar rooted trees with `n` leaves and every internal vertex of valence
/// at least 3, enumerated as strings, with their internal vertex counts.
pub fn planar_trees(n: usize) -> Vec<(String, usize)> {
    let mut memo = BTreeMap::new();
    trees(n, &mut memo)
}

fn trees(n: usize, memo: &mut BTreeMap<usize, Vec<(String, usize)>>) -> Vec<(String, usize)> {
    if n == 1 {
        return vec![("*".into(), 0)];
    }
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    for (s, k) in forests(n, 2, memo) {
        out.push((format!("({s})"), k + 1));
    }
    memo.insert(n, out.clone());
    out
}

/// Sequences of at least `min_parts` trees with `n` leaves in total.
fn forests(n: usize, min_parts: usize, memo: &mut BTreeMap<usize, Vec<(String, usize)>>) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    if min_parts <= 1 {
        out.extend(trees(n, memo));
    }
    for first in 1..n {
        let heads = trees(first, memo);
        let tails = forests(n - first, min_parts.saturating_sub(1).max(1), memo);
        for (h, hk) in &heads {
            for (t, tk) in &tails {
                out.push((format!("{h} {t}"), hk + tk));
            }
        }
    }
    out
}

/// Number of planar trees with `n` leaves, by number of internal vertices.
pub fn trees_by_internal_vertices(n: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (_, k) in planar_trees(n) {
        *out.entry(k).or_default() += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        // little Schröder numbers
        let totals: Vec<usize> = (1..=6).map(|n| planar_trees(n).len()).collect();
        assert_eq!(totals, vec![1, 1, 3, 11, 45, 197]);
        assert_eq!(trees_by_internal_vertices(4)[&2], 5);
    }
}
