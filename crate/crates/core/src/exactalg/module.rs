use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Chain, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        Self { label: label.into(), degree }
    }
}

/// A free ℤ-module with a finite, ordered set of labeled generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedModule {
    generators: Vec<Generator>,
    index: BTreeMap<String, usize>,
}

impl GradedModule {
    pub fn new(generators: impl IntoIterator<Item = Generator>) -> Result<Self> {
        let mut module = Self::default();
        for g in generators {
            module.push(g)?;
        }
        Ok(module)
    }

    pub fn push(&mut self, g: Generator) -> Result<()> {
        if self.index.contains_key(&g.label) {
            return Err(AlgebraError::DuplicateGenerator(g.label));
        }
        self.index.insert(g.label.clone(), self.generators.len());
        self.generators.push(g);
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn degree_of(&self, label: &str) -> Option<i64> {
        self.position(label).map(|i| self.generators[i].degree)
    }

    /// Generators of one degree, in module order.
    pub fn in_degree(&self, degree: i64) -> impl Iterator<Item = &Generator> + '_ {
        self.generators.iter().filter(move |g| g.degree == degree)
    }

    pub fn submodule_in_degree(&self, degree: i64) -> GradedModule {
        GradedModule::new(self.in_degree(degree).cloned()).expect("labels already unique")
    }

    /// Distinct degrees present, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.generators.iter().map(|g| g.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn check_chain(&self, chain: &Chain) -> Result<()> {
        chain.check_labels(|l| self.contains(l)).map_err(|l| AlgebraError::UnknownGenerator(l.to_string()))
    }

    /// Sum of two chains of this module.
    pub fn add(&self, a: &Chain, b: &Chain) -> Result<Chain> {
        self.check_chain(a)?;
        self.check_chain(b)?;
        a.plus(b)
    }

    /// The common degree of a nonzero homogeneous chain; `None` for zero or
    /// mixed-degree chains.
    pub fn homogeneous_degree(&self, chain: &Chain) -> Result<Option<i64>> {
        let mut degree = None;
        for label in chain.labels() {
            let d = self.degree_of(label).ok_or_else(|| AlgebraError::UnknownGenerator(label.to_string()))?;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return Ok(None),
                _ => {}
            }
        }
        Ok(degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module() -> GradedModule {
        GradedModule::new([Generator::new("x", 0), Generator::new("y", 1)]).unwrap()
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = GradedModule::new([Generator::new("x", 0), Generator::new("x", 1)]).unwrap_err();
        assert_eq!(err, AlgebraError::DuplicateGenerator("x".into()));
    }

    #[test]
    fn add_checks_membership() {
        let m = module();
        let ok = m.add(&Chain::generator("x"), &Chain::generator("y")).unwrap();
        assert_eq!(ok.len(), 2);
        let err = m.add(&Chain::generator("x"), &Chain::generator("z")).unwrap_err();
        assert_eq!(err, AlgebraError::UnknownGenerator("z".into()));
    }

    #[test]
    fn homogeneity_predicate() {
        let m = module();
        assert_eq!(m.homogeneous_degree(&Chain::generator("y")).unwrap(), Some(1));
        let mixed = Chain::generator("x").plus(&Chain::generator("y")).unwrap();
        assert_eq!(m.homogeneous_degree(&mixed).unwrap(), None);
        assert_eq!(m.homogeneous_degree(&Chain::zero()).unwrap(), None);
    }
}
