use std::fmt;

use super::{AlgebraError, Coeff, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Coeff>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.iter().flatten().copied().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        // accumulate in i128 so that only the final entries must fit
        let mut acc = vec![0i128; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)] as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)] as i128;
                    if b != 0 {
                        let slot = &mut acc[i * other.cols + j];
                        *slot = slot.checked_add(a * b).ok_or(AlgebraError::Overflow)?;
                    }
                }
            }
        }
        Ok(IntMatrix { rows: self.rows, cols: other.cols, data: acc.into_iter().map(narrow).collect::<Result<_>>()? })
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Result<Vec<Coeff>> {
        if v.len() != self.cols {
            return Err(AlgebraError::Shape("vector length".into()));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = 0i128;
                for (j, &x) in v.iter().enumerate() {
                    if x != 0 {
                        acc = acc.checked_add(self[(i, j)] as i128 * x as i128).ok_or(AlgebraError::Overflow)?;
                    }
                }
                narrow(acc)
            })
            .collect()
    }

    /// Sub-block of rows `r0..r1`, all columns.
    pub fn row_block(&self, r0: usize, r1: usize) -> IntMatrix {
        IntMatrix { rows: r1 - r0, cols: self.cols, data: self.data[r0 * self.cols..r1 * self.cols].to_vec() }
    }

    /// Determinant by fraction-free (Bareiss) elimination in `i128`.
    pub fn determinant(&self) -> Result<Coeff> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(AlgebraError::Overflow)?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        let det = sign * a[n - 1][n - 1];
        Coeff::try_from(det).map_err(|_| AlgebraError::Overflow)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Coeff;
    fn index(&self, (i, j): (usize, usize)) -> &Coeff {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Coeff {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]).unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.determinant().unwrap(), 0);
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), -1);
        let m = IntMatrix::from_rows(&[vec![4, 3], vec![6, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), -6);
    }

    #[test]
    fn product_shapes_checked() {
        let a = IntMatrix::zeros(2, 3);
        let b = IntMatrix::zeros(2, 3);
        assert!(a.mul(&b).is_err());
        assert_eq!(a.mul(&b.transpose()).unwrap(), IntMatrix::zeros(2, 2));
    }
}

fn narrow(x: i128) -> Result<Coeff> {
    Coeff::try_from(x).map_err(|_| AlgebraError::Overflow)
}
