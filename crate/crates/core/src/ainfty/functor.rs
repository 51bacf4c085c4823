use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{maltese, sign_of, AInftyCategory, AInftyError, Result};
use crate::exactalg::{AlgebraError, Chain};

/// Sign convention for the left-hand side of the functor equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// No signs on `μ^r(F^{s_r}(…), …, F^{s_1}(…))`.
    PaperLiteral,
    /// Adds `(−1)^{Σ_{i<j} s_i·deg(block j)}` to each left-hand term, where
    /// block 1 holds `x_1, …, x_{s_1}` and `deg` sums input degrees.
    Koszul,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::PaperLiteral => "paper-literal",
            Convention::Koszul => "koszul",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper-literal" => Ok(Convention::PaperLiteral),
            "koszul" => Ok(Convention::Koszul),
            other => Err(format!("unknown convention `{other}`")),
        }
    }
}

/// Components `F^d` of an A∞ functor, stored on source generator tuples in
/// written order. `F^d` has degree `1 − d`.
#[derive(Clone, Debug)]
pub struct AInftyFunctorData {
    source: Arc<AInftyCategory>,
    target: Arc<AInftyCategory>,
    object_map: BTreeMap<String, String>,
    components: BTreeMap<Vec<usize>, Chain>,
}

impl AInftyFunctorData {
    pub fn new(source: Arc<AInftyCategory>, target: Arc<AInftyCategory>, object_map: BTreeMap<String, String>) -> Result<Self> {
        for o in source.objects() {
            let image = object_map.get(o).ok_or_else(|| AInftyError::MissingObject(o.clone()))?;
            if !target.objects().contains(image) {
                return Err(AInftyError::UnknownObject(image.clone()));
            }
        }
        Ok(Self { source, target, object_map, components: BTreeMap::new() })
    }

    /// The functor that is the identity on objects and generators.
    pub fn identity(category: Arc<AInftyCategory>) -> Self {
        let object_map = category.objects().iter().map(|o| (o.clone(), o.clone())).collect();
        let components = (0..category.generators().len()).map(|i| (vec![i], Chain::generator(category.gen_at(i).label.clone()))).collect();
        Self { source: category.clone(), target: category, object_map, components }
    }

    pub fn source(&self) -> &Arc<AInftyCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInftyCategory> {
        &self.target
    }

    pub fn object_map(&self) -> &BTreeMap<String, String> {
        &self.object_map
    }

    /// Sets `F^d(inputs) = output` after checking composability, the target
    /// hom and the degree rule `Σ|x_i| + 1 − d`.
    pub fn set_component(&mut self, inputs: &[impl AsRef<str>], output: Chain) -> Result<()> {
        if inputs.is_empty() {
            return Err(AInftyError::EmptyOperation);
        }
        let ids = self.source.ids_of(inputs)?;
        let names = self.source.labels_of(&ids);
        let (src, tgt) = self.source.endpoints(&ids).ok_or_else(|| AInftyError::NotComposable(names.clone()))?;
        let degree: i64 = ids.iter().map(|&i| self.source.gen_at(i).degree).sum::<i64>() + 1 - ids.len() as i64;
        let (fs, ft) = (&self.object_map[src], &self.object_map[tgt]);
        self.target.check_output(&names, &output, fs, ft, degree)?;
        if output.is_zero() {
            self.components.remove(&ids);
        } else {
            self.components.insert(ids, output);
        }
        Ok(())
    }

    pub fn component(&self, inputs: &[impl AsRef<str>]) -> Result<Chain> {
        let ids = self.source.ids_of(inputs)?;
        Ok(self.components.get(&ids).cloned().unwrap_or_default())
    }

    /// Components as `(inputs, output)` pairs in canonical order.
    pub fn components(&self) -> Vec<(Vec<String>, Chain)> {
        self.components.iter().map(|(k, v)| (self.source.labels_of(k), v.clone())).collect()
    }

    /// `F` applied multilinearly to chains of the source, written order.
    fn apply(&self, inputs: &[Chain]) -> Result<Chain> {
        let mut out = Chain::zero();
        let mut ids = Vec::with_capacity(inputs.len());
        self.expand(inputs, &mut ids, 1, &mut out)?;
        Ok(out)
    }

    fn expand(&self, inputs: &[Chain], ids: &mut Vec<usize>, coeff: i64, out: &mut Chain) -> Result<()> {
        if ids.len() == inputs.len() {
            if let Some(v) = self.components.get(ids.as_slice()) {
                out.add_scaled(v, coeff)?;
            }
            return Ok(());
        }
        for (label, c) in inputs[ids.len()].iter() {
            ids.push(self.source.id_of(label)?);
            let next = coeff.checked_mul(c).ok_or(AlgebraError::Overflow)?;
            self.expand(inputs, ids, next, out)?;
            ids.pop();
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFailure {
    pub inputs: Vec<String>,
    pub lhs: Chain,
    pub rhs: Chain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorReport {
    pub passed: bool,
    pub convention: Convention,
    pub d_max: usize,
    pub tuples_checked: Vec<usize>,
    pub failure_count: usize,
    /// Smallest arity at which a failure occurs.
    pub first_failing_arity: Option<usize>,
    pub failures: Vec<FunctorFailure>,
}

const MAX_REPORTED: usize = 8;

fn gen_chain(c: &AInftyCategory, id: usize) -> Chain {
    Chain::generator(c.gen_at(id).label.clone())
}

/// `Σ_r Σ_{s_1+…+s_r=d} ± μ^r(F^{s_r}(…), …, F^{s_1}(…))` on `ids`.
fn lhs(f: &AInftyFunctorData, ids: &[usize], convention: Convention) -> Result<Chain> {
    let d = ids.len();
    let mut out = Chain::zero();
    // compositions of d, encoded by cut points between written positions
    for mask in 0u32..(1 << (d - 1)) {
        // blocks in written order: block r first
        let mut blocks: Vec<&[usize]> = Vec::new();
        let mut start = 0;
        for cut in 1..d {
            if mask & (1 << (cut - 1)) != 0 {
                blocks.push(&ids[start..cut]);
                start = cut;
            }
        }
        blocks.push(&ids[start..]);
        let mut values = Vec::with_capacity(blocks.len());
        let mut zero = false;
        for b in &blocks {
            match f.components.get(*b) {
                Some(v) => values.push(v.clone()),
                None => {
                    zero = true;
                    break;
                }
            }
        }
        if zero {
            continue;
        }
        let mut sign = 1;
        if convention == Convention::Koszul {
            // blocks numbered from the right: block j = blocks[r - j]
            let r = blocks.len();
            let deg = |b: &[usize]| -> i64 { b.iter().map(|&i| f.source.gen_at(i).degree).sum() };
            let mut e = 0;
            for j in 1..=r {
                for i in 1..j {
                    e += blocks[r - i].len() as i64 * deg(blocks[r - j]);
                }
            }
            sign = sign_of(e);
        }
        out.add_scaled(&f.target.mu_chains(&values)?, sign)?;
    }
    Ok(out)
}

/// `Σ_{m,n} (−1)^{✠_n} F^{d−m+1}(x_d, …, μ^m(x_{n+m}, …, x_{n+1}), x_n, …, x_1)`.
fn rhs(f: &AInftyFunctorData, ids: &[usize]) -> Result<Chain> {
    let d = ids.len();
    let s = &f.source;
    let degrees: Vec<i64> = ids.iter().rev().map(|&i| s.gen_at(i).degree).collect();
    let mut out = Chain::zero();
    for m in 1..=d {
        for n in 0..=d - m {
            let lo = d - n - m;
            let inner = match s.op_ids(&ids[lo..lo + m]) {
                Some(v) => v,
                None => continue,
            };
            let mut inputs: Vec<Chain> = ids[..lo].iter().map(|&i| gen_chain(s, i)).collect();
            inputs.push(inner.clone());
            inputs.extend(ids[lo + m..].iter().map(|&i| gen_chain(s, i)));
            out.add_scaled(&f.apply(&inputs)?, sign_of(maltese(n, &degrees)))?;
        }
    }
    Ok(out)
}

/// Source tuples of arity `≤ d_max` on which some term of either side is
/// structurally nonzero.
fn candidates(f: &AInftyFunctorData, d_max: usize) -> BTreeSet<Vec<usize>> {
    let s = &f.source;
    let t = &f.target;
    let mut out = BTreeSet::new();

    // right-hand side: source operation inside a component
    let mut slots: HashMap<(usize, usize, usize), Vec<&Vec<usize>>> = HashMap::new();
    for key in f.components.keys() {
        for (p, &id) in key.iter().enumerate() {
            slots.entry((key.len(), p, id)).or_default().push(key);
        }
    }
    for (inner, value) in s.operations() {
        for (label, _) in value.iter() {
            let y = s.id_of(label).expect("validated");
            for len in 1..=(d_max + 1).saturating_sub(inner.len()) {
                for p in 0..len {
                    for outer in slots.get(&(len, p, y)).into_iter().flatten() {
                        let mut tup = outer[..p].to_vec();
                        tup.extend_from_slice(inner);
                        tup.extend_from_slice(&outer[p + 1..]);
                        out.insert(tup);
                    }
                }
            }
        }
    }

    // left-hand side: target operation fed by components
    let mut by_output: HashMap<usize, Vec<&Vec<usize>>> = HashMap::new();
    for (key, value) in &f.components {
        for (label, _) in value.iter() {
            by_output.entry(t.id_of(label).expect("validated")).or_default().push(key);
        }
    }
    for key in t.operations().keys() {
        let mut acc = Vec::new();
        fill(f, key, 0, &by_output, d_max, &mut acc, &mut out);
    }
    out
}

fn fill(
    f: &AInftyFunctorData,
    key: &[usize],
    pos: usize,
    by_output: &HashMap<usize, Vec<&Vec<usize>>>,
    d_max: usize,
    acc: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if pos == key.len() {
        if f.source.endpoints(acc).is_some() {
            out.insert(acc.clone());
        }
        return;
    }
    for block in by_output.get(&key[pos]).into_iter().flatten() {
        if acc.len() + block.len() + (key.len() - pos - 1) > d_max {
            continue;
        }
        let len = acc.len();
        acc.extend_from_slice(block);
        fill(f, key, pos + 1, by_output, d_max, acc, out);
        acc.truncate(len);
    }
}

/// Checks the A∞ functor equations up to arity `d_max`.
pub fn check_functor(f: &AInftyFunctorData, d_max: usize, convention: Convention) -> Result<FunctorReport> {
    let tuples: Vec<Vec<usize>> = candidates(f, d_max).into_iter().collect();
    let mut tuples_checked = vec![0; d_max];
    for t in &tuples {
        tuples_checked[t.len() - 1] += 1;
    }
    let results: Vec<Result<Option<FunctorFailure>>> = tuples
        .par_iter()
        .map(|ids| {
            let l = lhs(f, ids, convention)?;
            let r = rhs(f, ids)?;
            Ok((l != r).then(|| FunctorFailure { inputs: f.source.labels_of(ids), lhs: l, rhs: r }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(x) = r? {
            failures.push(x);
        }
    }
    failures.sort_by(|a, b| (a.inputs.len(), &a.inputs).cmp(&(b.inputs.len(), &b.inputs)));
    let failure_count = failures.len();
    let first_failing_arity = failures.first().map(|x| x.inputs.len());
    failures.truncate(MAX_REPORTED);
    Ok(FunctorReport { passed: failure_count == 0, convention, d_max, tuples_checked, failure_count, first_failing_arity, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::fixtures;

    #[test]
    fn identity_functor_passes() {
        let c = Arc::new(fixtures::dg_fixture());
        let f = AInftyFunctorData::identity(c);
        for conv in [Convention::PaperLiteral, Convention::Koszul] {
            let r = check_functor(&f, 4, conv).unwrap();
            assert!(r.passed, "{conv}: {r:?}");
        }
    }

    #[test]
    fn doubling_fails_exactly_at_two() {
        let c = Arc::new(fixtures::dg_fixture());
        let mut f = AInftyFunctorData::identity(c.clone());
        for g in c.generators() {
            f.set_component(&[&g.label], Chain::term(g.label.clone(), 2)).unwrap();
        }
        let r = check_functor(&f, 4, Convention::PaperLiteral).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failing_arity, Some(2));
    }

    #[test]
    fn component_degree_rule() {
        let c = Arc::new(fixtures::dg_fixture());
        let mut f = AInftyFunctorData::identity(c);
        // F^2 must lower total degree by one
        let err = f.set_component(&["t", "a"], Chain::generator("a'")).unwrap_err();
        assert!(matches!(err, AInftyError::DegreeRule { .. }));
        f.set_component(&["t", "a"], Chain::generator("c'")).unwrap();
    }

    #[test]
    fn convention_parsing() {
        assert_eq!("koszul".parse::<Convention>().unwrap(), Convention::Koszul);
        assert_eq!(Convention::PaperLiteral.to_string(), "paper-literal");
        assert!("other".parse::<Convention>().is_err());
    }
}
