use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Cell, CubeSpec, CubicalError, PresentedCubicalSet, Result};

/// On-disk form of a presented cubical set. Face keys are `"k,ε"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicalFile {
    pub cubes: Vec<CubeDecl>,
    #[serde(default)]
    pub faces: BTreeMap<String, BTreeMap<String, FaceSpec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubeDecl {
    pub label: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceSpec {
    Cube(String),
    Degenerate(DegenerateSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateSpec {
    pub of: String,
    pub dir: Directions,
}

/// One collapsed coordinate, or several for iterated degeneracies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Directions {
    One(usize),
    Many(Vec<usize>),
}

fn parse_key(key: &str) -> Result<(usize, u8)> {
    let bad = || CubicalError::BadFaceKey(key.to_string());
    let (k, e) = key.split_once(',').ok_or_else(bad)?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    let e: u8 = e.trim().parse().map_err(|_| bad())?;
    if e > 1 {
        return Err(bad());
    }
    Ok((k, e))
}

impl CubicalFile {
    pub fn to_set(&self) -> Result<PresentedCubicalSet> {
        for label in self.faces.keys() {
            if !self.cubes.iter().any(|c| &c.label == label) {
                return Err(CubicalError::UnknownCube(label.clone()));
            }
        }
        let mut cubes = Vec::with_capacity(self.cubes.len());
        for decl in &self.cubes {
            let given = self.faces.get(&decl.label);
            let mut slots: Vec<[Option<Cell>; 2]> = vec![[None, None]; decl.dim];
            for (key, spec) in given.into_iter().flatten() {
                let (k, eps) = parse_key(key)?;
                if k == 0 || k > decl.dim {
                    return Err(CubicalError::FaceIndex { k, eps, dim: decl.dim });
                }
                let cell = match spec {
                    FaceSpec::Cube(l) => Cell::cube(l.clone()),
                    FaceSpec::Degenerate(d) => {
                        let dirs = match &d.dir {
                            Directions::One(j) => vec![*j],
                            Directions::Many(v) => v.clone(),
                        };
                        if dirs.is_empty() {
                            return Err(CubicalError::BadDegeneracy {
                                cube: decl.label.clone(),
                                k,
                                eps,
                                reason: "degenerate marker without a direction".into(),
                            });
                        }
                        Cell::degenerate(d.of.clone(), dirs)
                    }
                };
                slots[k - 1][eps as usize] = Some(cell);
            }
            let mut faces = Vec::with_capacity(decl.dim);
            for (k0, [f0, f1]) in slots.into_iter().enumerate() {
                let missing = |eps| CubicalError::MissingFace { cube: decl.label.clone(), k: k0 + 1, eps };
                faces.push([f0.ok_or_else(|| missing(0))?, f1.ok_or_else(|| missing(1))?]);
            }
            cubes.push(CubeSpec { label: decl.label.clone(), dim: decl.dim, faces });
        }
        PresentedCubicalSet::new(cubes)
    }

    pub fn from_set(set: &PresentedCubicalSet) -> Self {
        let cubes = set.cubes().iter().map(|c| CubeDecl { label: c.label.clone(), dim: c.dim }).collect();
        let faces = set
            .cubes()
            .iter()
            .filter(|c| c.dim > 0)
            .map(|c| {
                let mut m = BTreeMap::new();
                for (k0, pair) in c.faces.iter().enumerate() {
                    for (eps, cell) in pair.iter().enumerate() {
                        let spec = if cell.is_degenerate() {
                            let dir = if cell.collapsed.len() == 1 {
                                Directions::One(cell.collapsed[0])
                            } else {
                                Directions::Many(cell.collapsed.clone())
                            };
                            FaceSpec::Degenerate(DegenerateSpec { of: cell.base.clone(), dir })
                        } else {
                            FaceSpec::Cube(cell.base.clone())
                        };
                        m.insert(format!("{},{}", k0 + 1, eps), spec);
                    }
                }
                (c.label.clone(), m)
            })
            .collect();
        Self { cubes, faces }
    }
}
