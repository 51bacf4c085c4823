use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An affine form `c + Σ v` over `𝔽_2` in named integer variables, read
/// modulo 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub constant: bool,
    pub vars: BTreeSet<String>,
}

impl LinearForm {
    pub fn constant(c: i64) -> Self {
        Self { constant: c.rem_euclid(2) == 1, vars: BTreeSet::new() }
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self { constant: false, vars: BTreeSet::from([name.into()]) }
    }

    pub fn add(&mut self, other: &LinearForm) {
        self.constant ^= other.constant;
        for v in &other.vars {
            if !self.vars.remove(v) {
                self.vars.insert(v.clone());
            }
        }
    }

    pub fn plus(mut self, other: &LinearForm) -> Self {
        self.add(other);
        self
    }

    pub fn add_constant(&mut self, c: i64) {
        self.constant ^= c.rem_euclid(2) == 1;
    }

    pub fn sum<'a>(forms: impl IntoIterator<Item = &'a LinearForm>) -> Self {
        let mut out = Self::default();
        for f in forms {
            out.add(f);
        }
        out
    }

    pub fn scaled(&self, c: i64) -> Self {
        if c.rem_euclid(2) == 1 {
            self.clone()
        } else {
            Self::default()
        }
    }

    pub fn evaluate(&self, value: &dyn Fn(&str) -> Option<i64>) -> Result<bool, String> {
        let mut acc = self.constant;
        for v in &self.vars {
            acc ^= value(v).ok_or_else(|| v.clone())?.rem_euclid(2) == 1;
        }
        Ok(acc)
    }
}

/// A polynomial over `𝔽_2` of degree at most 2 in named variables; used as
/// a sign exponent. Since `v² ≡ v (mod 2)` on integers, monomials are sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParityPoly {
    monomials: BTreeSet<BTreeSet<String>>,
}

impl ParityPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::default();
        p.toggle(BTreeSet::new());
        p
    }

    fn toggle(&mut self, m: BTreeSet<String>) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn from_linear(f: &LinearForm) -> Self {
        let mut p = Self::default();
        if f.constant {
            p.toggle(BTreeSet::new());
        }
        for v in &f.vars {
            p.toggle(BTreeSet::from([v.clone()]));
        }
        p
    }

    /// The product of two affine forms.
    pub fn product(a: &LinearForm, b: &LinearForm) -> Self {
        let pa = Self::from_linear(a);
        let pb = Self::from_linear(b);
        let mut p = Self::default();
        for x in &pa.monomials {
            for y in &pb.monomials {
                p.toggle(x.union(y).cloned().collect());
            }
        }
        p
    }

    pub fn add(&mut self, other: &ParityPoly) {
        for m in &other.monomials {
            self.toggle(m.clone());
        }
    }

    pub fn plus(mut self, other: &ParityPoly) -> Self {
        self.add(other);
        self
    }

    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Self {
        let mut p = Self::default();
        for m in &self.monomials {
            p.toggle(m.iter().map(|v| f(v)).collect());
        }
        p
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.monomials.iter().flatten().cloned().collect()
    }

    /// `true` when the exponent is odd.
    pub fn evaluate(&self, value: &dyn Fn(&str) -> Option<i64>) -> Result<bool, String> {
        let mut acc = false;
        for m in &self.monomials {
            let mut term = true;
            for v in m {
                term &= value(v).ok_or_else(|| v.clone())?.rem_euclid(2) == 1;
            }
            acc ^= term;
        }
        Ok(acc)
    }

    pub fn sign(&self, value: &dyn Fn(&str) -> Option<i64>) -> Result<i64, String> {
        Ok(if self.evaluate(value)? { -1 } else { 1 })
    }
}

impl fmt::Display for ParityPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| if m.is_empty() { "1".to_string() } else { m.iter().cloned().collect::<Vec<_>>().join("·") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
