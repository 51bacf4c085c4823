use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AInftyCategory, AInftyError, AInftyFunctorData, MorphismGenerator, Result};
use crate::exactalg::{Chain, Coeff};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDecl {
    pub label: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
}

/// `μ_d(inputs) = Σ coeff·label`, inputs in written order `x_d, …, x_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationDecl {
    pub inputs: Vec<String>,
    pub output: Vec<(String, Coeff)>,
}

/// On-disk form of an A∞ category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub generators: Vec<GeneratorDecl>,
    #[serde(default)]
    pub operations: Vec<OperationDecl>,
}

/// On-disk form of A∞ functor data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub source: CategoryFile,
    pub target: CategoryFile,
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub components: Vec<OperationDecl>,
    /// Conventions the fixture is documented to satisfy.
    #[serde(default)]
    pub satisfies: Vec<String>,
}

fn to_chain(terms: &[(String, Coeff)]) -> Result<Chain> {
    Ok(Chain::from_terms(terms.iter().cloned())?)
}

fn to_terms(c: &Chain) -> Vec<(String, Coeff)> {
    c.iter().map(|(l, k)| (l.to_string(), k)).collect()
}

impl CategoryFile {
    pub fn to_category(&self) -> Result<AInftyCategory> {
        let gens = self
            .generators
            .iter()
            .map(|g| MorphismGenerator { label: g.label.clone(), source: g.source.clone(), target: g.target.clone(), degree: g.degree })
            .collect();
        let mut c = AInftyCategory::new(self.objects.clone(), gens)?;
        for op in &self.operations {
            if !c.mu(&op.inputs)?.is_zero() {
                return Err(AInftyError::Malformed(format!("operation {:?} given twice", op.inputs)));
            }
            c.set_operation(&op.inputs, to_chain(&op.output)?)?;
        }
        Ok(c)
    }

    pub fn from_category(c: &AInftyCategory) -> Self {
        Self {
            objects: c.objects().to_vec(),
            generators: c
                .generators()
                .iter()
                .map(|g| GeneratorDecl { label: g.label.clone(), source: g.source.clone(), target: g.target.clone(), degree: g.degree })
                .collect(),
            operations: c.operations().iter().map(|(ids, v)| OperationDecl { inputs: c.labels_of(ids), output: to_terms(v) }).collect(),
        }
    }
}

impl FunctorFile {
    pub fn to_functor(&self) -> Result<AInftyFunctorData> {
        let source = Arc::new(self.source.to_category()?);
        let target = Arc::new(self.target.to_category()?);
        let mut f = AInftyFunctorData::new(source, target, self.object_map.clone())?;
        for comp in &self.components {
            f.set_component(&comp.inputs, to_chain(&comp.output)?)?;
        }
        Ok(f)
    }

    pub fn from_functor(f: &AInftyFunctorData, satisfies: Vec<String>) -> Self {
        Self {
            source: CategoryFile::from_category(f.source()),
            target: CategoryFile::from_category(f.target()),
            object_map: f.object_map().clone(),
            components: f.components().into_iter().map(|(inputs, v)| OperationDecl { inputs, output: to_terms(&v) }).collect(),
            satisfies,
        }
    }
}
