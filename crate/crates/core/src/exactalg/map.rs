use std::collections::BTreeMap;
use std::sync::Arc;

use super::{AlgebraError, Chain, Generator, GradedModule, IntMatrix, Result};

/// A homogeneous linear map between free modules, stored by its values on
/// source generators. Generators without an entry map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    name: String,
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    shift: i64,
    entries: BTreeMap<String, Chain>,
}

impl SparseMap {
    pub fn new(
        name: impl Into<String>,
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        shift: i64,
        entries: impl IntoIterator<Item = (String, Chain)>,
    ) -> Result<Self> {
        let mut map = Self { name: name.into(), source, target, shift, entries: BTreeMap::new() };
        for (src, image) in entries {
            map.set(src, image)?;
        }
        Ok(map)
    }

    pub fn zero(name: impl Into<String>, source: Arc<GradedModule>, target: Arc<GradedModule>, shift: i64) -> Self {
        Self { name: name.into(), source, target, shift, entries: BTreeMap::new() }
    }

    pub fn identity(module: Arc<GradedModule>) -> Self {
        let entries = module.generators().iter().map(|g| (g.label.clone(), Chain::generator(g.label.clone()))).collect();
        Self { name: "id".into(), source: module.clone(), target: module, shift: 0, entries }
    }

    fn set(&mut self, src: String, image: Chain) -> Result<()> {
        let src_degree = self.source.degree_of(&src).ok_or_else(|| AlgebraError::UnknownGenerator(src.clone()))?;
        for label in image.labels() {
            let d = self.target.degree_of(label).ok_or_else(|| AlgebraError::UnknownGenerator(label.to_string()))?;
            if d != src_degree + self.shift {
                return Err(AlgebraError::DegreeMismatch {
                    source_label: src,
                    target: label.to_string(),
                    expected: src_degree + self.shift,
                    found: d,
                });
            }
        }
        if image.is_zero() {
            self.entries.remove(&src);
        } else {
            self.entries.insert(src, image);
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &Chain)> + '_ {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn image_of(&self, label: &str) -> Option<&Chain> {
        self.entries.get(label)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, chain: &Chain) -> Result<Chain> {
        let mut out = Chain::zero();
        for (label, c) in chain.iter() {
            if !self.source.contains(label) {
                return Err(AlgebraError::UnknownGenerator(label.to_string()));
            }
            if let Some(image) = self.entries.get(label) {
                out.add_scaled(image, c)?;
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SparseMap) -> Result<SparseMap> {
        if inner.target != self.source {
            return Err(AlgebraError::ModuleMismatch(format!("target of `{}` is not the source of `{}`", inner.name, self.name)));
        }
        let mut entries = BTreeMap::new();
        for (src, image) in &inner.entries {
            let composed = self.apply(image)?;
            if !composed.is_zero() {
                entries.insert(src.clone(), composed);
            }
        }
        Ok(SparseMap {
            name: format!("{}∘{}", self.name, inner.name),
            source: inner.source.clone(),
            target: self.target.clone(),
            shift: self.shift + inner.shift,
            entries,
        })
    }

    /// Restriction to source generators of one degree, landing in the
    /// target generators of degree `degree + shift`.
    pub fn restrict_to_degree(&self, degree: i64) -> SparseMap {
        let source = Arc::new(self.source.submodule_in_degree(degree));
        let target = Arc::new(self.target.submodule_in_degree(degree + self.shift));
        let entries = self.entries.iter().filter(|(k, _)| source.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
        SparseMap { name: format!("{}[{}]", self.name, degree), source, target, shift: self.shift, entries }
    }

    /// Matrix with columns indexed by source generators and rows by target
    /// generators, both in module order.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target.len(), self.source.len());
        for (src, image) in &self.entries {
            let j = self.source.position(src).expect("validated");
            for (label, c) in image.iter() {
                let i = self.target.position(label).expect("validated");
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Rebuilds a map from a matrix in module order.
    pub fn from_matrix(
        name: impl Into<String>,
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        shift: i64,
        matrix: &IntMatrix,
    ) -> Result<SparseMap> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(AlgebraError::Shape("matrix does not match modules".into()));
        }
        let tgt: Vec<&Generator> = target.generators().iter().collect();
        let entries: Vec<(String, Chain)> = source
            .generators()
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let image = Chain::from_terms(tgt.iter().enumerate().map(|(i, t)| (t.label.clone(), matrix[(i, j)])))?;
                Ok((g.label.clone(), image))
            })
            .collect::<Result<_>>()?;
        SparseMap::new(name, source, target, shift, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module() -> Arc<GradedModule> {
        Arc::new(GradedModule::new([Generator::new("p", 0), Generator::new("q", 0), Generator::new("e", 1)]).unwrap())
    }

    fn boundary(m: &Arc<GradedModule>) -> SparseMap {
        let image = Chain::from_terms([("p", -1), ("q", 1)]).unwrap();
        SparseMap::new("d", m.clone(), m.clone(), -1, [("e".to_string(), image)]).unwrap()
    }

    #[test]
    fn identity_is_left_unit() {
        let m = module();
        let d = boundary(&m);
        let composed = SparseMap::identity(m.clone()).compose(&d).unwrap();
        assert_eq!(composed.to_matrix(), d.to_matrix());
        assert_eq!(composed.shift(), -1);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let m = module();
        let d = boundary(&m);
        let dd = d.compose(&d).unwrap();
        assert!(dd.is_zero());
        assert_eq!(dd.shift(), -2);
    }

    #[test]
    fn composing_with_zero_is_zero() {
        let m = module();
        let d = boundary(&m);
        let z = SparseMap::zero("0", m.clone(), m.clone(), 0);
        assert!(d.compose(&z).unwrap().is_zero());
    }

    #[test]
    fn mismatched_modules_rejected() {
        let m = module();
        let other = Arc::new(GradedModule::new([Generator::new("z", 0)]).unwrap());
        let d = boundary(&m);
        let f = SparseMap::zero("f", other.clone(), other, 0);
        assert!(matches!(d.compose(&f), Err(AlgebraError::ModuleMismatch(_))));
    }

    #[test]
    fn degree_rule_enforced() {
        let m = module();
        let err = SparseMap::new("bad", m.clone(), m, -1, [("e".to_string(), Chain::generator("e"))]).unwrap_err();
        assert!(matches!(err, AlgebraError::DegreeMismatch { .. }));
    }
}
