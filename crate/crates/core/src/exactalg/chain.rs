use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[cfg(test)]
use super::AlgebraError;
use super::{checked_add, checked_mul, Result};

pub type Coeff = i64;

/// A finite integer combination of generator labels.
///
/// Zero coefficients are never stored, so two chains are equal exactly when
/// their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain {
    terms: BTreeMap<String, Coeff>,
}

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(label: impl Into<String>) -> Self {
        Self::term(label, 1)
    }

    pub fn term(label: impl Into<String>, coeff: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(label.into(), coeff);
        }
        Self { terms }
    }

    /// Sums repeated labels; fails only on overflow.
    pub fn from_terms<I, S>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Coeff)>,
        S: Into<String>,
    {
        let mut chain = Self::zero();
        for (label, coeff) in terms {
            chain.add_term(label, coeff)?;
        }
        Ok(chain)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &str) -> Coeff {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Coeff)> + '_ {
        self.terms.iter().map(|(l, &c)| (l.as_str(), c))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.terms.keys().map(String::as_str)
    }

    pub fn add_term(&mut self, label: impl Into<String>, coeff: Coeff) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let label = label.into();
        let current = self.terms.get(&label).copied().unwrap_or(0);
        let next = checked_add(current, coeff)?;
        if next == 0 {
            self.terms.remove(&label);
        } else {
            self.terms.insert(label, next);
        }
        Ok(())
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Chain, scale: Coeff) -> Result<()> {
        if scale == 0 {
            return Ok(());
        }
        for (label, c) in other.iter() {
            self.add_term(label, checked_mul(c, scale)?)?;
        }
        Ok(())
    }

    pub fn plus(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub fn minus(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_scaled(other, -1)?;
        Ok(out)
    }

    pub fn scaled(&self, scale: Coeff) -> Result<Chain> {
        let mut out = Chain::zero();
        out.add_scaled(self, scale)?;
        Ok(out)
    }

    pub fn negated(&self) -> Result<Chain> {
        self.scaled(-1)
    }

    /// Relabels every generator; colliding images are summed.
    pub fn map_labels(&self, mut f: impl FnMut(&str) -> String) -> Result<Chain> {
        let mut out = Chain::zero();
        for (label, c) in self.iter() {
            out.add_term(f(label), c)?;
        }
        Ok(out)
    }

    /// Reduction of every coefficient modulo 2.
    pub fn mod2(&self) -> Chain {
        Chain { terms: self.terms.iter().filter(|(_, c)| **c % 2 != 0).map(|(l, _)| (l.clone(), 1)).collect() }
    }

    pub(crate) fn check_labels<'a>(&'a self, mut known: impl FnMut(&str) -> bool) -> std::result::Result<(), &'a str> {
        for label in self.terms.keys() {
            if !known(label) {
                return Err(label);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if i > 0 {
                write!(f, " ")?;
            }
            if mag == 1 {
                write!(f, "{sign}{label}")?;
            } else {
                write!(f, "{sign}{mag}·{label}")?;
            }
        }
        Ok(())
    }
}

impl<S: Into<String>> FromIterator<(S, Coeff)> for Chain {
    /// Panics on overflow; use [`Chain::from_terms`] for fallible input.
    fn from_iter<T: IntoIterator<Item = (S, Coeff)>>(iter: T) -> Self {
        Chain::from_terms(iter).expect("coefficient overflow")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_leaves_empty_chain() {
        let a = Chain::term("g", 2);
        let b = Chain::term("g", -2);
        let sum = a.plus(&b).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn distinct_generators_stay_separate() {
        let sum = Chain::generator("x").plus(&Chain::generator("y")).unwrap();
        assert_eq!(sum.coeff("x"), 1);
        assert_eq!(sum.coeff("y"), 1);
        assert_eq!(sum.len(), 2);
    }

    #[test]
    fn like_terms_combine() {
        let sum = Chain::term("g", 3).plus(&Chain::term("g", 4)).unwrap();
        assert_eq!(sum, Chain::term("g", 7));
    }

    #[test]
    fn overflow_is_reported() {
        let big = Chain::term("g", i64::MAX);
        assert_eq!(big.plus(&Chain::generator("g")), Err(AlgebraError::Overflow));
        assert_eq!(big.scaled(2), Err(AlgebraError::Overflow));
    }

    #[test]
    fn display_is_readable() {
        let c: Chain = [("a", 1), ("b", -2)].into_iter().collect();
        assert_eq!(c.to_string(), "a -2·b");
        assert_eq!(Chain::zero().to_string(), "0");
    }
}
