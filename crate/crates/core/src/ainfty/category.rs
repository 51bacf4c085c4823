use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AInftyError, HomMismatch, Result};
use crate::exactalg::{AlgebraError, Chain, Coeff, Generator, GradedModule, SparseMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismGenerator {
    pub label: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
}

/// One coefficient of one structure map: the coefficient of `output` in
/// `μ_d(inputs)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StructureConstant {
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: Coeff,
}

/// Objects, graded hom modules and sparse structure maps `μ_d`.
///
/// Structure maps are stored on composable generator tuples in written order
/// `[x_d, …, x_1]`; tuples without an entry evaluate to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInftyCategory {
    objects: Vec<String>,
    generators: Vec<MorphismGenerator>,
    index: HashMap<String, usize>,
    operations: BTreeMap<Vec<usize>, Chain>,
}

impl AInftyCategory {
    pub fn new(objects: Vec<String>, generators: Vec<MorphismGenerator>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            for o in [&g.source, &g.target] {
                if !objects.contains(o) {
                    return Err(AInftyError::UnknownObject(o.clone()));
                }
            }
            if index.insert(g.label.clone(), i).is_some() {
                return Err(AInftyError::DuplicateGenerator(g.label.clone()));
            }
        }
        Ok(Self { objects, generators, index, operations: BTreeMap::new() })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[MorphismGenerator] {
        &self.generators
    }

    pub fn generator(&self, label: &str) -> Result<&MorphismGenerator> {
        self.index.get(label).map(|&i| &self.generators[i]).ok_or_else(|| AInftyError::UnknownGenerator(label.to_string()))
    }

    pub(crate) fn id_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| AInftyError::UnknownGenerator(label.to_string()))
    }

    pub(crate) fn gen_at(&self, id: usize) -> &MorphismGenerator {
        &self.generators[id]
    }

    pub fn degree(&self, label: &str) -> Result<i64> {
        Ok(self.generator(label)?.degree)
    }

    pub(crate) fn labels_of(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| self.generators[i].label.clone()).collect()
    }

    pub(crate) fn ids_of(&self, labels: &[impl AsRef<str>]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.id_of(l.as_ref())).collect()
    }

    /// Generators of `hom(a, b)` in declaration order.
    pub fn hom(&self, a: &str, b: &str) -> Vec<&MorphismGenerator> {
        self.generators.iter().filter(|g| g.source == a && g.target == b).collect()
    }

    pub fn hom_module(&self, a: &str, b: &str) -> Arc<GradedModule> {
        Arc::new(
            GradedModule::new(self.hom(a, b).into_iter().map(|g| Generator::new(g.label.clone(), g.degree))).expect("labels are unique"),
        )
    }

    /// `μ_1` on `hom(a, b)` as a map of degree +1.
    pub fn mu1_map(&self, a: &str, b: &str) -> Result<SparseMap> {
        let module = self.hom_module(a, b);
        let entries = self
            .hom(a, b)
            .into_iter()
            .filter_map(|g| {
                let id = self.index[&g.label];
                self.operations.get(&vec![id]).map(|c| (g.label.clone(), c.clone()))
            })
            .collect::<Vec<_>>();
        Ok(SparseMap::new("μ1", module.clone(), module, 1, entries)?)
    }

    /// Source object of the composite `x_d ∘ … ∘ x_1` and its target, if the
    /// written-order tuple is composable.
    pub(crate) fn endpoints(&self, ids: &[usize]) -> Option<(&str, &str)> {
        let first = self.generators.get(*ids.last()?)?;
        let last = &self.generators[ids[0]];
        for w in ids.windows(2) {
            if self.generators[w[0]].source != self.generators[w[1]].target {
                return None;
            }
        }
        Some((&first.source, &last.target))
    }

    pub fn is_composable(&self, labels: &[impl AsRef<str>]) -> Result<bool> {
        let ids = self.ids_of(labels)?;
        Ok(!ids.is_empty() && self.endpoints(&ids).is_some())
    }

    /// Checks that `chain` lies in `hom(src, tgt)` and in degree `degree`.
    pub(crate) fn check_output(&self, inputs: &[String], chain: &Chain, src: &str, tgt: &str, degree: i64) -> Result<()> {
        for (label, _) in chain.iter() {
            let g = self.generator(label)?;
            if g.source != src || g.target != tgt {
                return Err(AInftyError::WrongHom(Box::new(HomMismatch {
                    inputs: inputs.to_vec(),
                    label: label.to_string(),
                    source_obj: src.to_string(),
                    target_obj: tgt.to_string(),
                    found_source: g.source.clone(),
                    found_target: g.target.clone(),
                })));
            }
            if g.degree != degree {
                return Err(AInftyError::DegreeRule {
                    inputs: inputs.to_vec(),
                    label: label.to_string(),
                    expected: degree,
                    found: g.degree,
                });
            }
        }
        Ok(())
    }

    /// Sets `μ_d(inputs) = output`, replacing any previous value. Checks
    /// composability, the target hom and the degree rule.
    pub fn set_operation(&mut self, inputs: &[impl AsRef<str>], output: Chain) -> Result<()> {
        if inputs.is_empty() {
            return Err(AInftyError::EmptyOperation);
        }
        let ids = self.ids_of(inputs)?;
        let names = self.labels_of(&ids);
        let (src, tgt) =
            self.endpoints(&ids).map(|(a, b)| (a.to_string(), b.to_string())).ok_or_else(|| AInftyError::NotComposable(names.clone()))?;
        let degree: i64 = ids.iter().map(|&i| self.generators[i].degree).sum::<i64>() + 2 - ids.len() as i64;
        self.check_output(&names, &output, &src, &tgt, degree)?;
        if output.is_zero() {
            self.operations.remove(&ids);
        } else {
            self.operations.insert(ids, output);
        }
        Ok(())
    }

    /// Adds `coeff · output` to `μ_d(inputs)`.
    pub fn add_to_operation(&mut self, inputs: &[impl AsRef<str>], output: &str, coeff: Coeff) -> Result<()> {
        let ids = self.ids_of(inputs)?;
        let mut current = self.operations.get(&ids).cloned().unwrap_or_default();
        current.add_term(output, coeff)?;
        self.set_operation(inputs, current)
    }

    /// Largest arity with a nonzero structure map.
    pub fn max_arity(&self) -> usize {
        self.operations.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Whether all `μ_d` with `d ≥ 3` vanish.
    pub fn is_dg(&self) -> bool {
        self.max_arity() <= 2
    }

    pub(crate) fn operations(&self) -> &BTreeMap<Vec<usize>, Chain> {
        &self.operations
    }

    pub(crate) fn op_ids(&self, ids: &[usize]) -> Option<&Chain> {
        self.operations.get(ids)
    }

    /// `μ_d` on a tuple of generator labels in written order.
    pub fn mu(&self, inputs: &[impl AsRef<str>]) -> Result<Chain> {
        let ids = self.ids_of(inputs)?;
        Ok(self.operations.get(&ids).cloned().unwrap_or_default())
    }

    /// `μ_d` extended multilinearly to chains, inputs in written order.
    pub fn mu_chains(&self, inputs: &[Chain]) -> Result<Chain> {
        let mut out = Chain::zero();
        let mut ids = Vec::with_capacity(inputs.len());
        self.expand(inputs, &mut ids, 1, &mut out)?;
        Ok(out)
    }

    fn expand(&self, inputs: &[Chain], ids: &mut Vec<usize>, coeff: Coeff, out: &mut Chain) -> Result<()> {
        if ids.len() == inputs.len() {
            if let Some(v) = self.operations.get(ids.as_slice()) {
                out.add_scaled(v, coeff)?;
            }
            return Ok(());
        }
        for (label, c) in inputs[ids.len()].iter() {
            ids.push(self.id_of(label)?);
            let next = coeff.checked_mul(c).ok_or(AlgebraError::Overflow)?;
            self.expand(inputs, ids, next, out)?;
            ids.pop();
        }
        Ok(())
    }

    /// All nonzero structure constants in canonical order.
    pub fn constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for (ids, chain) in &self.operations {
            for (label, c) in chain.iter() {
                out.push(StructureConstant { inputs: self.labels_of(ids), output: label.to_string(), coeff: c });
            }
        }
        out
    }

    /// A copy with the sign of one structure constant flipped.
    pub fn with_flipped(&self, constant: &StructureConstant) -> Result<Self> {
        let mut copy = self.clone();
        copy.add_to_operation(&constant.inputs, &constant.output, -2 * constant.coeff)?;
        Ok(copy)
    }

    /// Number of nonzero entries `μ_d(x_d, …, x_1)`.
    pub fn nonzero_products(&self) -> usize {
        self.operations.len()
    }
}
