use serde::{Deserialize, Serialize};

use super::{BraneError, Result};

/// A set of Pin-structure labels with an action of `V = 𝔽_2^dim`, given as
/// one permutation of the points per vector (vectors indexed by their bits).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinTorsor {
    dim: usize,
    points: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsorReport {
    pub identity: bool,
    pub compatible: bool,
    pub free: bool,
    pub transitive: bool,
}

impl TorsorReport {
    pub fn passed(&self) -> bool {
        self.identity && self.compatible && self.free && self.transitive
    }
}

impl PinTorsor {
    /// Points `labels[i]` with `β · P_i = P_{i ⊕ β}`; a torsor by construction.
    pub fn standard(dim: usize, labels: Vec<String>) -> Result<Self> {
        if labels.len() != 1 << dim {
            return Err(BraneError::MalformedTorsor(format!("need {} labels, got {}", 1 << dim, labels.len())));
        }
        let table = (0..1usize << dim).map(|b| (0..labels.len()).map(|i| i ^ b).collect()).collect();
        Self::from_table(dim, labels, table)
    }

    /// An arbitrary action table; validated for shape only, the axioms are
    /// checked by [`Self::check_axioms`].
    pub fn from_table(dim: usize, points: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        if table.len() != 1 << dim {
            return Err(BraneError::MalformedTorsor(format!("need {} rows, got {}", 1 << dim, table.len())));
        }
        for row in &table {
            if row.len() != points.len() || row.iter().any(|&p| p >= points.len()) {
                return Err(BraneError::MalformedTorsor("row is not a map on the points".into()));
            }
        }
        Ok(Self { dim, points, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    fn vector_index(&self, beta: &[u8]) -> Result<usize> {
        if beta.len() != self.dim || beta.iter().any(|&b| b > 1) {
            return Err(BraneError::BadVector(beta.to_vec(), self.dim));
        }
        Ok(beta.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum())
    }

    /// Twist the Pin structure `point` by `β ∈ V`.
    pub fn act(&self, beta: &[u8], point: &str) -> Result<&str> {
        let b = self.vector_index(beta)?;
        let p = self.points.iter().position(|x| x == point).ok_or_else(|| BraneError::UnknownPoint(point.into()))?;
        Ok(&self.points[self.table[b][p]])
    }

    /// Group action (`0` acts trivially, `(β+γ)·P = β·(γ·P)`), freeness and
    /// transitivity, checked exhaustively.
    pub fn check_axioms(&self) -> TorsorReport {
        let n = self.points.len();
        let v = 1usize << self.dim;
        let identity = (0..n).all(|p| self.table[0][p] == p);
        let compatible = (0..v).all(|b| (0..v).all(|c| (0..n).all(|p| self.table[b ^ c][p] == self.table[b][self.table[c][p]])));
        let free = (1..v).all(|b| (0..n).all(|p| self.table[b][p] != p));
        let transitive = n > 0
            && (0..n).all(|p| {
                let mut seen = vec![false; n];
                for b in 0..v {
                    seen[self.table[b][p]] = true;
                }
                seen.into_iter().all(|s| s)
            });
        TorsorReport { identity, compatible, free, transitive }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four() -> PinTorsor {
        PinTorsor::standard(2, ["P", "Q", "R", "S"].map(String::from).to_vec()).unwrap()
    }

    #[test]
    fn involution_and_orbit() {
        let t = four();
        assert_eq!(t.act(&[0, 0], "R").unwrap(), "R");
        let once = t.act(&[1, 1], "Q").unwrap().to_string();
        assert_eq!(t.act(&[1, 1], &once).unwrap(), "Q");
        let orbit: std::collections::BTreeSet<&str> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|b| t.act(b, "P").unwrap()).collect();
        assert_eq!(orbit.len(), 4);
        assert!(t.check_axioms().passed());
        assert!(matches!(t.act(&[1], "P"), Err(BraneError::BadVector(..))));
        assert!(matches!(t.act(&[1, 0], "T"), Err(BraneError::UnknownPoint(_))));
    }

    #[test]
    fn non_free_table_is_caught() {
        let points = ["P", "Q"].map(String::from).to_vec();
        let t = PinTorsor::from_table(1, points, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let r = t.check_axioms();
        assert!(!r.free && !r.transitive && r.identity);
    }
}
