use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Chain, Coeff, Generator, GradedModule, Result, SparseMap};

/// On-disk form: `{"generators":[{"label","degree"}], "maps":[{"name","shift","entries":{src:[[dst,coeff]]}}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub maps: Vec<MapFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub name: String,
    pub shift: i64,
    pub entries: BTreeMap<String, Vec<(String, Coeff)>>,
}

/// A module together with named endomorphisms loaded from a [`ModuleFile`].
#[derive(Clone, Debug)]
pub struct ModuleBundle {
    pub module: Arc<GradedModule>,
    pub maps: Vec<SparseMap>,
}

impl ModuleBundle {
    pub fn from_file(file: &ModuleFile) -> Result<Self> {
        let module = Arc::new(GradedModule::new(file.generators.iter().cloned())?);
        let maps = file
            .maps
            .iter()
            .map(|m| {
                let entries = m
                    .entries
                    .iter()
                    .map(|(src, terms)| Ok((src.clone(), Chain::from_terms(terms.iter().cloned())?)))
                    .collect::<Result<Vec<_>>>()?;
                SparseMap::new(m.name.clone(), module.clone(), module.clone(), m.shift, entries)
            })
            .collect::<Result<_>>()?;
        Ok(Self { module, maps })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModuleFile = serde_json::from_str(text).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn map(&self, name: &str) -> Option<&SparseMap> {
        self.maps.iter().find(|m| m.name() == name)
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile {
            generators: self.module.generators().to_vec(),
            maps: self
                .maps
                .iter()
                .map(|m| MapFile {
                    name: m.name().to_string(),
                    shift: m.shift(),
                    entries: m.entries().map(|(k, v)| (k.to_string(), v.iter().map(|(l, c)| (l.to_string(), c)).collect())).collect(),
                })
                .collect(),
        }
    }
}
