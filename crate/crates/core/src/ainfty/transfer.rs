use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AInftyCategory, AInftyError, AInftyFunctorData, MorphismGenerator, Result};
use crate::exactalg::Chain;

/// Deformation-retract data on one hom complex `C = hom(source, target)`:
/// a smaller complex `H` with maps `i: H → C`, `p: C → H` and a homotopy
/// `h: C → C` of degree −1 such that `p i = 1` and `μ_1 h + h μ_1 = i p − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomRetract {
    pub source: String,
    pub target: String,
    /// Generators of `H` as `(label, degree)`.
    pub homology: Vec<(String, i64)>,
    pub i: BTreeMap<String, Chain>,
    pub p: BTreeMap<String, Chain>,
    pub h: BTreeMap<String, Chain>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Retract {
    pub homs: Vec<HomRetract>,
}

/// The transferred A∞ structure on `H` and the A∞ functor `H → C`
/// extending the inclusion.
#[derive(Clone, Debug)]
pub struct TransferResult {
    pub minimal: Arc<AInftyCategory>,
    pub functor: AInftyFunctorData,
}

fn apply(map: &BTreeMap<String, Chain>, chain: &Chain) -> Result<Chain> {
    let mut out = Chain::zero();
    for (l, c) in chain.iter() {
        if let Some(v) = map.get(l) {
            out.add_scaled(v, c)?;
        }
    }
    Ok(out)
}

struct Transfer<'a> {
    dg: &'a AInftyCategory,
    h_cat: &'a AInftyCategory,
    // per (source, target) object pair
    maps: HashMap<(String, String), &'a HomRetract>,
    phi: HashMap<Vec<usize>, Chain>,
}

impl<'a> Transfer<'a> {
    fn retract(&self, src: &str, tgt: &str) -> Option<&'a HomRetract> {
        self.maps.get(&(src.to_string(), tgt.to_string())).copied()
    }

    fn endpoints(&self, ids: &[usize]) -> (String, String) {
        let (a, b) = self.h_cat.endpoints(ids).expect("composable");
        (a.to_string(), b.to_string())
    }

    // μ_2(Φ(prefix), Φ(suffix)) summed over all splits of a written-order tuple
    fn split_products(&mut self, ids: &[usize]) -> Result<Chain> {
        let mut out = Chain::zero();
        for j in 1..ids.len() {
            let left = self.phi(&ids[..j])?;
            if left.is_zero() {
                continue;
            }
            let right = self.phi(&ids[j..])?;
            if right.is_zero() {
                continue;
            }
            out.add_scaled(&self.dg.mu_chains(&[left, right])?, 1)?;
        }
        Ok(out)
    }

    // Φ_1 = i, Φ_k = h μ_2(Φ, Φ)
    fn phi(&mut self, ids: &[usize]) -> Result<Chain> {
        if let Some(v) = self.phi.get(ids) {
            return Ok(v.clone());
        }
        let (src, tgt) = self.endpoints(ids);
        let value = if ids.len() == 1 {
            let label = &self.h_cat.gen_at(ids[0]).label;
            self.retract(&src, &tgt).and_then(|r| r.i.get(label).cloned()).unwrap_or_default()
        } else {
            let s = self.split_products(ids)?;
            match self.retract(&src, &tgt) {
                Some(r) => apply(&r.h, &s)?,
                None => Chain::zero(),
            }
        };
        self.phi.insert(ids.to_vec(), value.clone());
        Ok(value)
    }
}

fn validate(dg: &AInftyCategory, r: &HomRetract) -> Result<()> {
    let err = |reason: String| AInftyError::Retract { source_obj: r.source.clone(), target_obj: r.target.clone(), reason };
    let c_gens = dg.hom(&r.source, &r.target);
    let h_labels: Vec<&String> = r.homology.iter().map(|(l, _)| l).collect();
    let h_degree = |l: &str| r.homology.iter().find(|(x, _)| x == l).map(|(_, d)| *d);
    let c_degree = |l: &str| c_gens.iter().find(|g| g.label == l).map(|g| g.degree);
    let check = |map: &BTreeMap<String, Chain>,
                 name: &str,
                 dom: &dyn Fn(&str) -> Option<i64>,
                 cod: &dyn Fn(&str) -> Option<i64>,
                 shift: i64|
     -> Result<()> {
        for (k, v) in map {
            let d = dom(k).ok_or_else(|| err(format!("{name} is defined on unknown `{k}`")))?;
            for (l, _) in v.iter() {
                let e = cod(l).ok_or_else(|| err(format!("{name}({k}) mentions unknown `{l}`")))?;
                if e != d + shift {
                    return Err(err(format!("{name}({k}) has a term of degree {e}, expected {}", d + shift)));
                }
            }
        }
        Ok(())
    };
    check(&r.i, "i", &h_degree, &c_degree, 0)?;
    check(&r.p, "p", &c_degree, &h_degree, 0)?;
    check(&r.h, "h", &c_degree, &c_degree, -1)?;
    for l in &h_labels {
        let pi = apply(&r.p, &r.i.get(*l).cloned().unwrap_or_default())?;
        if pi != Chain::generator((*l).clone()) {
            return Err(err(format!("p(i({l})) = {pi}")));
        }
    }
    let mu1 = |x: &Chain| dg.mu_chains(std::slice::from_ref(x));
    for g in &c_gens {
        let x = Chain::generator(g.label.clone());
        let mut lhs = mu1(&apply(&r.h, &x)?)?;
        lhs.add_scaled(&apply(&r.h, &mu1(&x)?)?, 1)?;
        let mut rhs = apply(&r.i, &apply(&r.p, &x)?)?;
        rhs.add_scaled(&x, -1)?;
        if lhs != rhs {
            return Err(err(format!("μ1 h + h μ1 = {lhs} but i p − 1 = {rhs} on `{}`", g.label)));
        }
    }
    Ok(())
}

/// Homotopy transfer of a DG structure along a deformation retract.
///
/// Written in the order `a_1, …, a_k = x_1, …, x_k`:
/// `Φ_1 = i`, `Φ_k = Σ h μ_2(Φ_{k_2}(a_{k_1+1}, …), Φ_{k_1}(a_1, …))`,
/// `μ'_1 = p μ_1 i` and `μ'_k = Σ p μ_2(Φ_{k_2}, Φ_{k_1})` for `k ≥ 2`.
/// The functor `H → C` has components `F^k = Φ_k`.
pub fn transfer(dg: Arc<AInftyCategory>, retract: &Retract, d_max: usize) -> Result<TransferResult> {
    let mut maps = HashMap::new();
    let mut generators = Vec::new();
    for r in &retract.homs {
        validate(&dg, r)?;
        maps.insert((r.source.clone(), r.target.clone()), r);
        for (label, degree) in &r.homology {
            generators.push(MorphismGenerator {
                label: label.clone(),
                source: r.source.clone(),
                target: r.target.clone(),
                degree: *degree,
            });
        }
    }
    for a in dg.objects() {
        for b in dg.objects() {
            if !dg.hom(a, b).is_empty() && !maps.contains_key(&(a.clone(), b.clone())) {
                return Err(AInftyError::Retract {
                    source_obj: a.clone(),
                    target_obj: b.clone(),
                    reason: "no retract given for a nonzero hom complex".into(),
                });
            }
        }
    }
    let mut h_cat = AInftyCategory::new(dg.objects().to_vec(), generators)?;

    // all composable written-order tuples of H generators up to d_max
    let n = h_cat.generators().len();
    let mut tuples: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut frontier = tuples.clone();
    for _ in 1..d_max {
        let mut next = Vec::new();
        for t in &frontier {
            for g in 0..n {
                if h_cat.gen_at(g).source == h_cat.gen_at(t[0]).target {
                    let mut u = vec![g];
                    u.extend_from_slice(t);
                    next.push(u);
                }
            }
        }
        tuples.extend(next.iter().cloned());
        frontier = next;
    }

    let mut ops: Vec<(Vec<String>, Chain)> = Vec::new();
    let mut comps: Vec<(Vec<String>, Chain)> = Vec::new();
    {
        let mut t = Transfer { dg: &dg, h_cat: &h_cat, maps, phi: HashMap::new() };
        for ids in &tuples {
            let (src, tgt) = t.endpoints(ids);
            let labels = h_cat.labels_of(ids);
            let r = t.retract(&src, &tgt);
            let mu = if ids.len() == 1 {
                let i_x = t.phi(ids)?;
                match r {
                    Some(r) => apply(&r.p, &dg.mu_chains(&[i_x])?)?,
                    None => Chain::zero(),
                }
            } else {
                let s = t.split_products(ids)?;
                match r {
                    Some(r) => apply(&r.p, &s)?,
                    None => Chain::zero(),
                }
            };
            ops.push((labels.clone(), mu));
            comps.push((labels, t.phi(ids)?));
        }
    }
    for (labels, mu) in ops {
        h_cat.set_operation(&labels, mu)?;
    }
    let minimal = Arc::new(h_cat);
    let object_map = dg.objects().iter().map(|o| (o.clone(), o.clone())).collect();
    let mut functor = AInftyFunctorData::new(minimal.clone(), dg, object_map)?;
    for (labels, phi) in comps {
        functor.set_component(&labels, phi)?;
    }
    Ok(TransferResult { minimal, functor })
}
