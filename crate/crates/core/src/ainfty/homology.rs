use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{sign_of, AInftyCategory, Result};
use crate::exactalg::{Chain, HomologyBasis, HomologyClass};

/// Cohomology of `hom(source, target)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomGroup {
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<i64>,
    /// Cycle representatives: free generators first, then torsion generators.
    pub representatives: Vec<Chain>,
}

/// A basis class: `index` into the representatives of its group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassRef {
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub index: usize,
}

/// `[μ_2(left, right)]` for two basis classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: ClassRef,
    pub right: ClassRef,
    pub result: HomologyClass,
}

/// A triple of basis classes on which `[μ_2(μ_2(a_3,a_2),a_1)]` and
/// `(−1)^{|a_1|}[μ_2(a_3,μ_2(a_2,a_1))]` differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityFailure {
    pub classes: [ClassRef; 3],
    pub left_nested: HomologyClass,
    pub right_nested: HomologyClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProductTable {
    pub groups: Vec<HomGroup>,
    pub products: Vec<ProductEntry>,
    pub triples_checked: usize,
    pub associative: bool,
    pub failures: Vec<AssociativityFailure>,
}

struct Group {
    source: String,
    target: String,
    degree: i64,
    basis: HomologyBasis,
    reps: Vec<Chain>,
}

fn groups(c: &AInftyCategory) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    for a in c.objects() {
        for b in c.objects() {
            let hom = c.hom(a, b);
            if hom.is_empty() {
                continue;
            }
            let mu1 = c.mu1_map(a, b)?;
            let mut degrees: Vec<i64> = hom.iter().map(|g| g.degree).collect();
            degrees.sort_unstable();
            degrees.dedup();
            for k in degrees {
                let basis = HomologyBasis::new(&mu1.restrict_to_degree(k - 1), &mu1.restrict_to_degree(k))?;
                let mut reps = basis.free_representatives()?;
                reps.extend(basis.torsion_representatives()?.into_iter().map(|(_, r)| r));
                out.push(Group { source: a.clone(), target: b.clone(), degree: k, basis, reps });
            }
        }
    }
    Ok(out)
}

/// The product induced by `μ_2` on cohomology of every hom complex, with an
/// exhaustive associativity check on basis classes:
/// `[μ_2(μ_2(a_3,a_2),a_1)] = (−1)^{|a_1|}[μ_2(a_3,μ_2(a_2,a_1))]`.
pub fn homology_product(c: &AInftyCategory) -> Result<HomologyProductTable> {
    let gs = groups(c)?;
    let mut lookup: BTreeMap<(&str, &str, i64), usize> = BTreeMap::new();
    for (i, g) in gs.iter().enumerate() {
        lookup.insert((&g.source, &g.target, g.degree), i);
    }
    let classify = |src: &str, tgt: &str, degree: i64, chain: &Chain| -> Result<HomologyClass> {
        match lookup.get(&(src, tgt, degree)) {
            Some(&i) => Ok(gs[i].basis.classify(chain)?),
            // an empty hom group: only zero lives there
            None => Ok(HomologyClass { free: vec![], torsion: vec![] }),
        }
    };
    let class_ref = |g: &Group, index| ClassRef { source: g.source.clone(), target: g.target.clone(), degree: g.degree, index };

    let mut products = Vec::new();
    for g1 in &gs {
        for g2 in gs.iter().filter(|g| g.source == g1.target) {
            for (i1, r1) in g1.reps.iter().enumerate() {
                for (i2, r2) in g2.reps.iter().enumerate() {
                    let v = c.mu_chains(&[r2.clone(), r1.clone()])?;
                    products.push(ProductEntry {
                        left: class_ref(g2, i2),
                        right: class_ref(g1, i1),
                        result: classify(&g1.source, &g2.target, g1.degree + g2.degree, &v)?,
                    });
                }
            }
        }
    }

    let mut failures = Vec::new();
    let mut triples_checked = 0;
    for g1 in &gs {
        for g2 in gs.iter().filter(|g| g.source == g1.target) {
            for g3 in gs.iter().filter(|g| g.source == g2.target) {
                let degree = g1.degree + g2.degree + g3.degree;
                for (i1, r1) in g1.reps.iter().enumerate() {
                    for (i2, r2) in g2.reps.iter().enumerate() {
                        let r21 = c.mu_chains(&[r2.clone(), r1.clone()])?;
                        for (i3, r3) in g3.reps.iter().enumerate() {
                            triples_checked += 1;
                            let left = c.mu_chains(&[c.mu_chains(&[r3.clone(), r2.clone()])?, r1.clone()])?;
                            let right = c.mu_chains(&[r3.clone(), r21.clone()])?.scaled(sign_of(g1.degree))?;
                            let cl = classify(&g1.source, &g3.target, degree, &left)?;
                            let cr = classify(&g1.source, &g3.target, degree, &right)?;
                            if cl != cr {
                                failures.push(AssociativityFailure {
                                    classes: [class_ref(g3, i3), class_ref(g2, i2), class_ref(g1, i1)],
                                    left_nested: cl,
                                    right_nested: cr,
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(HomologyProductTable {
        groups: gs
            .iter()
            .map(|g| HomGroup {
                source: g.source.clone(),
                target: g.target.clone(),
                degree: g.degree,
                rank: g.basis.rank(),
                torsion: g.basis.torsion(),
                representatives: g.reps.clone(),
            })
            .collect(),
        products,
        triples_checked,
        associative: failures.is_empty(),
        failures,
    })
}

/// Generator triples on which the chain-level product is not associative,
/// i.e. `μ_2(μ_2(x_3,x_2),x_1) ≠ (−1)^{|x_1|} μ_2(x_3,μ_2(x_2,x_1))`.
pub fn chain_associativity(c: &AInftyCategory) -> Result<Vec<[String; 3]>> {
    let n = c.generators().len();
    let mut out = Vec::new();
    for i1 in 0..n {
        for i2 in 0..n {
            if c.endpoints(&[i2, i1]).is_none() {
                continue;
            }
            for i3 in 0..n {
                if c.endpoints(&[i3, i2]).is_none() {
                    continue;
                }
                let labels = c.labels_of(&[i3, i2, i1]);
                let g = |l: &String| Chain::generator(l.clone());
                let left = c.mu_chains(&[c.mu(&labels[..2])?, g(&labels[2])])?;
                let right = c.mu_chains(&[g(&labels[0]), c.mu(&labels[1..])?])?.scaled(sign_of(c.gen_at(i1).degree))?;
                if left != right {
                    out.push([labels[0].clone(), labels[1].clone(), labels[2].clone()]);
                }
            }
        }
    }
    Ok(out)
}
