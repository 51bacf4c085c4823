use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{maltese, sign_of, AInftyCategory, Result};
use crate::exactalg::Chain;

/// One summand `(−1)^{✠_k} μ_{d1}(x_d, …, μ_{d2}(x_{k+d2}, …, x_{k+1}), …, x_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub d1: usize,
    pub d2: usize,
    pub k: usize,
    pub sign: i64,
    pub value: Chain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub inputs: Vec<String>,
    pub total: Chain,
    pub terms: Vec<RelationTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AInftyReport {
    pub passed: bool,
    pub d_max: usize,
    /// Number of tuples with a structurally nonzero term, by arity `1..=d_max`.
    pub tuples_checked: Vec<usize>,
    pub failure_count: usize,
    /// The first failures in (arity, labels) order.
    pub failures: Vec<RelationFailure>,
}

const MAX_REPORTED: usize = 8;

/// Nonzero summands of the degree-`d` relation on `ids` (written order),
/// with their signs already applied to `value`.
pub(crate) fn terms_ids(c: &AInftyCategory, ids: &[usize]) -> Result<Vec<RelationTerm>> {
    let d = ids.len();
    // degrees[j-1] = |x_j|
    let degrees: Vec<i64> = ids.iter().rev().map(|&i| c.gen_at(i).degree).collect();
    let mut out = Vec::new();
    for d2 in 1..=d {
        let d1 = d + 1 - d2;
        for k in 0..=d - d2 {
            let lo = d - k - d2;
            let inner = match c.op_ids(&ids[lo..lo + d2]) {
                Some(v) => v,
                None => continue,
            };
            let mut inputs: Vec<Chain> = Vec::with_capacity(d1);
            inputs.extend(ids[..lo].iter().map(|&i| Chain::generator(c.gen_at(i).label.clone())));
            inputs.push(inner.clone());
            inputs.extend(ids[lo + d2..].iter().map(|&i| Chain::generator(c.gen_at(i).label.clone())));
            let sign = sign_of(maltese(k, &degrees));
            let value = c.mu_chains(&inputs)?.scaled(sign)?;
            if !value.is_zero() {
                out.push(RelationTerm { d1, d2, k, sign, value });
            }
        }
    }
    Ok(out)
}

/// Nonzero summands of the A∞ relation on a written-order tuple of labels.
pub fn relation_terms(c: &AInftyCategory, inputs: &[impl AsRef<str>]) -> Result<Vec<RelationTerm>> {
    terms_ids(c, &c.ids_of(inputs)?)
}

/// The value of the A∞ relation on a written-order tuple of labels.
pub fn check_relation(c: &AInftyCategory, inputs: &[impl AsRef<str>]) -> Result<Chain> {
    let mut total = Chain::zero();
    for t in relation_terms(c, inputs)? {
        total.add_scaled(&t.value, 1)?;
    }
    Ok(total)
}

/// Tuples of arity `≤ d_max` on which at least one summand of the relation
/// is structurally nonzero: an inner entry whose output meets an input slot
/// of an outer entry.
pub(crate) fn candidates(c: &AInftyCategory, d_max: usize) -> BTreeSet<Vec<usize>> {
    let mut slots: HashMap<(usize, usize, usize), Vec<&Vec<usize>>> = HashMap::new();
    for key in c.operations().keys() {
        for (p, &id) in key.iter().enumerate() {
            slots.entry((key.len(), p, id)).or_default().push(key);
        }
    }
    let mut out = BTreeSet::new();
    for (inner, value) in c.operations() {
        for (label, _) in value.iter() {
            let y = c.id_of(label).expect("validated output");
            for d1 in 1..=(d_max + 1).saturating_sub(inner.len()) {
                for p in 0..d1 {
                    for outer in slots.get(&(d1, p, y)).into_iter().flatten() {
                        let mut t = Vec::with_capacity(d1 + inner.len() - 1);
                        t.extend_from_slice(&outer[..p]);
                        t.extend_from_slice(inner);
                        t.extend_from_slice(&outer[p + 1..]);
                        out.insert(t);
                    }
                }
            }
        }
    }
    out
}

/// Checks the A∞ relations
/// `Σ (−1)^{✠_k} μ_{d1}(x_d, …, μ_{d2}(x_{k+d2}, …, x_{k+1}), x_k, …, x_1) = 0`
/// for every composable tuple of arity `≤ d_max`. Tuples on which every
/// summand vanishes structurally are skipped.
pub fn check_ainfty(c: &AInftyCategory, d_max: usize) -> Result<AInftyReport> {
    let tuples: Vec<Vec<usize>> = candidates(c, d_max).into_iter().collect();
    let mut tuples_checked = vec![0; d_max];
    for t in &tuples {
        tuples_checked[t.len() - 1] += 1;
    }
    let results: Vec<Result<Option<RelationFailure>>> = tuples
        .par_iter()
        .map(|ids| {
            let terms = terms_ids(c, ids)?;
            let mut total = Chain::zero();
            for t in &terms {
                total.add_scaled(&t.value, 1)?;
            }
            Ok((!total.is_zero()).then(|| RelationFailure { inputs: c.labels_of(ids), total, terms }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    failures.sort_by(|a, b| (a.inputs.len(), &a.inputs).cmp(&(b.inputs.len(), &b.inputs)));
    let failure_count = failures.len();
    failures.truncate(MAX_REPORTED);
    Ok(AInftyReport { passed: failure_count == 0, d_max, tuples_checked, failure_count, failures })
}
