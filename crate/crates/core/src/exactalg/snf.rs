use super::{AlgebraError, Coeff, IntMatrix, Result};

/// `d = u · a · v` with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries, each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<Coeff> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).take_while(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

// Reduction runs in i128 and narrows at the end; intermediate entries
// routinely exceed i64 even when the final transforms do not.
type W = i128;

#[derive(Clone)]
struct Wide {
    rows: usize,
    cols: usize,
    data: Vec<W>,
}

impl Wide {
    fn identity(n: usize) -> Self {
        let mut m = Self { rows: n, cols: n, data: vec![0; n * n] };
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    fn from_narrow(a: &IntMatrix) -> Self {
        let data = (0..a.rows()).flat_map(|i| a.row(i).iter().map(|&x| x as W)).collect();
        Self { rows: a.rows(), cols: a.cols(), data }
    }

    fn narrow(&self) -> Result<IntMatrix> {
        let rows = (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .map(|&x| Coeff::try_from(x).map_err(|_| AlgebraError::Overflow))
                    .collect()
            })
            .collect::<Result<Vec<Vec<Coeff>>>>()?;
        if self.rows == 0 || self.cols == 0 {
            return Ok(IntMatrix::zeros(self.rows, self.cols));
        }
        IntMatrix::from_rows(&rows)
    }

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }
}

impl std::ops::Index<(usize, usize)> for Wide {
    type Output = W;
    fn index(&self, (i, j): (usize, usize)) -> &W {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Wide {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut W {
        &mut self.data[i * self.cols + j]
    }
}

fn wadd(a: W, b: W) -> Result<W> {
    a.checked_add(b).ok_or(AlgebraError::Overflow)
}

fn wmul(a: W, b: W) -> Result<W> {
    a.checked_mul(b).ok_or(AlgebraError::Overflow)
}

struct Reducer {
    a: Wide,
    u: Wide,
    u_inv: Wide,
    v: Wide,
    v_inv: Wide,
}

impl Reducer {
    // row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: W) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                let x = wadd(m[(i, k)], wmul(c, m[(j, k)])?)?;
                m[(i, k)] = x;
            }
        }
        let m = &mut self.u_inv;
        for k in 0..m.rows() {
            let x = wadd(m[(k, j)], wmul(-c, m[(k, i)])?)?;
            m[(k, j)] = x;
        }
        Ok(())
    }

    // col_j += c * col_i
    fn col_add(&mut self, j: usize, i: usize, c: W) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        for m in [&mut self.a, &mut self.v] {
            for k in 0..m.rows() {
                let x = wadd(m[(k, j)], wmul(c, m[(k, i)])?)?;
                m[(k, j)] = x;
            }
        }
        let m = &mut self.v_inv;
        for k in 0..m.cols() {
            let x = wadd(m[(i, k)], wmul(-c, m[(j, k)])?)?;
            m[(i, k)] = x;
        }
        Ok(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                let t = m[(i, k)];
                m[(i, k)] = m[(j, k)];
                m[(j, k)] = t;
            }
        }
        let m = &mut self.u_inv;
        for k in 0..m.rows() {
            let t = m[(k, i)];
            m[(k, i)] = m[(k, j)];
            m[(k, j)] = t;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for k in 0..m.rows() {
                let t = m[(k, i)];
                m[(k, i)] = m[(k, j)];
                m[(k, j)] = t;
            }
        }
        let m = &mut self.v_inv;
        for k in 0..m.cols() {
            let t = m[(i, k)];
            m[(i, k)] = m[(j, k)];
            m[(j, k)] = t;
        }
    }

    fn row_negate(&mut self, i: usize) -> Result<()> {
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                m[(i, k)] = m[(i, k)].checked_neg().ok_or(AlgebraError::Overflow)?;
            }
        }
        let m = &mut self.u_inv;
        for k in 0..m.rows() {
            m[(k, i)] = m[(k, i)].checked_neg().ok_or(AlgebraError::Overflow)?;
        }
        Ok(())
    }

    // rows (i, j) <- l · rows (i, j), with l unimodular and l_inv its inverse
    fn row_mix(&mut self, i: usize, j: usize, l: [[W; 2]; 2], l_inv: [[W; 2]; 2]) -> Result<()> {
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                let (x, y) = (m[(i, k)], m[(j, k)]);
                m[(i, k)] = combine(l[0][0], x, l[0][1], y)?;
                m[(j, k)] = combine(l[1][0], x, l[1][1], y)?;
            }
        }
        let m = &mut self.u_inv;
        for k in 0..m.rows() {
            let (x, y) = (m[(k, i)], m[(k, j)]);
            m[(k, i)] = combine(x, l_inv[0][0], y, l_inv[1][0])?;
            m[(k, j)] = combine(x, l_inv[0][1], y, l_inv[1][1])?;
        }
        Ok(())
    }

    // cols (i, j) <- cols (i, j) · r, with r unimodular and r_inv its inverse
    fn col_mix(&mut self, i: usize, j: usize, r: [[W; 2]; 2], r_inv: [[W; 2]; 2]) -> Result<()> {
        for m in [&mut self.a, &mut self.v] {
            for k in 0..m.rows() {
                let (x, y) = (m[(k, i)], m[(k, j)]);
                m[(k, i)] = combine(x, r[0][0], y, r[1][0])?;
                m[(k, j)] = combine(x, r[0][1], y, r[1][1])?;
            }
        }
        let m = &mut self.v_inv;
        for k in 0..m.cols() {
            let (x, y) = (m[(i, k)], m[(j, k)]);
            m[(i, k)] = combine(r_inv[0][0], x, r_inv[0][1], y)?;
            m[(j, k)] = combine(r_inv[1][0], x, r_inv[1][1], y)?;
        }
        Ok(())
    }

    /// Row-style Hermite pass: echelon form by row operations, with entries
    /// above each pivot reduced modulo the pivot.
    fn row_hermite(&mut self) -> Result<()> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            loop {
                let Some(p) = (r..rows).filter(|&i| self.a[(i, c)] != 0).min_by_key(|&i| self.a[(i, c)].unsigned_abs()) else {
                    break;
                };
                self.row_swap(r, p);
                let mut done = true;
                for i in r + 1..rows {
                    let q = nearest_quotient(self.a[(i, c)], self.a[(r, c)]);
                    self.row_add(i, r, -q)?;
                    done &= self.a[(i, c)] == 0;
                }
                if done {
                    break;
                }
            }
            if self.a[(r, c)] == 0 {
                continue;
            }
            if self.a[(r, c)] < 0 {
                self.row_negate(r)?;
            }
            for i in 0..r {
                let q = nearest_quotient(self.a[(i, c)], self.a[(r, c)]);
                self.row_add(i, r, -q)?;
            }
            r += 1;
        }
        Ok(())
    }

    /// Column analogue of [`Self::row_hermite`].
    fn col_hermite(&mut self) -> Result<()> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut c = 0;
        for r in 0..rows {
            if c == cols {
                break;
            }
            loop {
                let Some(p) = (c..cols).filter(|&j| self.a[(r, j)] != 0).min_by_key(|&j| self.a[(r, j)].unsigned_abs()) else {
                    break;
                };
                self.col_swap(c, p);
                let mut done = true;
                for j in c + 1..cols {
                    let q = nearest_quotient(self.a[(r, j)], self.a[(r, c)]);
                    self.col_add(j, c, -q)?;
                    done &= self.a[(r, j)] == 0;
                }
                if done {
                    break;
                }
            }
            if self.a[(r, c)] == 0 {
                continue;
            }
            for j in 0..c {
                let q = nearest_quotient(self.a[(r, j)], self.a[(r, c)]);
                self.col_add(j, c, -q)?;
            }
            c += 1;
        }
        Ok(())
    }

    fn is_diagonal(&self) -> bool {
        (0..self.a.rows()).all(|i| (0..self.a.cols()).all(|j| i == j || self.a[(i, j)] == 0))
    }

    /// Alternates Hermite passes until the matrix is diagonal.
    fn diagonalize(&mut self, rows_first: bool) -> Result<()> {
        let mut row_turn = rows_first;
        while !self.is_diagonal() {
            if row_turn {
                self.row_hermite()?;
            } else {
                self.col_hermite()?;
            }
            row_turn = !row_turn;
        }
        Ok(())
    }

    fn reverse_rows(&mut self) {
        let n = self.a.rows();
        for i in 0..n / 2 {
            self.row_swap(i, n - 1 - i);
        }
    }

    fn reverse_cols(&mut self) {
        let n = self.a.cols();
        for j in 0..n / 2 {
            self.col_swap(j, n - 1 - j);
        }
    }

    fn largest_transform_entry(&self) -> u128 {
        [&self.u, &self.u_inv, &self.v, &self.v_inv].iter().flat_map(|m| m.data.iter()).map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// diag(a, b) -> diag(gcd, lcm) on positions i < j.
    fn gcd_lcm(&mut self, i: usize, j: usize) -> Result<()> {
        let (a, b) = (self.a[(i, i)], self.a[(j, j)]);
        if b == 0 || b % a == 0 {
            return Ok(());
        }
        let (g, s, t) = ext_gcd(a, b);
        let (a1, b1) = (a / g, b / g);
        let tb1 = wmul(t, b1)?;
        let sa1 = wmul(s, a1)?;
        self.row_mix(i, j, [[s, t], [-b1, a1]], [[a1, -t], [b1, s]])?;
        self.col_mix(i, j, [[1, -tb1], [1, sa1]], [[sa1, tb1], [-1, 1]])
    }

    fn reduce(&mut self, strategy: Strategy) -> Result<()> {
        if strategy.reverse_rows {
            self.reverse_rows();
        }
        if strategy.reverse_cols {
            self.reverse_cols();
        }
        self.diagonalize(strategy.rows_first)?;
        let n = self.a.rows().min(self.a.cols());
        // nonzero diagonal entries first
        let mut k = 0;
        for t in 0..n {
            if self.a[(t, t)] != 0 {
                self.row_swap(k, t);
                self.col_swap(k, t);
                k += 1;
            }
        }
        for t in 0..n {
            if self.a[(t, t)] < 0 {
                self.row_negate(t)?;
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                self.gcd_lcm(i, j)?;
            }
        }
        self.shrink_transforms(k)
    }

    /// Rows k.. of u span the left kernel and columns k.. of v the right
    /// kernel; adding kernel vectors to other rows (columns) leaves d fixed.
    /// Pairwise size reduction against them keeps the transforms short.
    fn shrink_transforms(&mut self, k: usize) -> Result<()> {
        const PASSES: usize = 64;
        for _ in 0..PASSES {
            let mut changed = false;
            for s in k..self.u.rows() {
                for t in (0..self.u.rows()).filter(|&t| t != s) {
                    let c = projection(|m| self.u[(t, m)], |m| self.u[(s, m)], self.u.cols());
                    if c != 0 {
                        self.row_add(t, s, -c)?;
                        changed = true;
                    }
                }
            }
            for s in k..self.v.cols() {
                for t in (0..self.v.cols()).filter(|&t| t != s) {
                    let c = projection(|m| self.v[(m, t)], |m| self.v[(m, s)], self.v.rows());
                    if c != 0 {
                        self.col_add(t, s, -c)?;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(())
    }
}

// nearest integer to <x, y> / <y, y>
fn projection(x: impl Fn(usize) -> W, y: impl Fn(usize) -> W, len: usize) -> W {
    let (mut xy, mut yy) = (0.0f64, 0.0f64);
    for m in 0..len {
        let (a, b) = (x(m) as f64, y(m) as f64);
        xy += a * b;
        yy += b * b;
    }
    if yy == 0.0 {
        return 0;
    }
    let c = (xy / yy).round();
    // a tie (|c| = 1/2) would not shorten x
    if c.abs() < 1.0 || (xy / yy).abs() <= 0.5 {
        return 0;
    }
    c as W
}

// p·x + q·y
fn combine(p: W, x: W, q: W, y: W) -> Result<W> {
    wadd(wmul(p, x)?, wmul(q, y)?)
}

// (g, s, t) with g = gcd(a, b) = s·a + t·b > 0, for a, b nonzero
fn ext_gcd(a: W, b: W) -> (W, W, W) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a.abs(), b.abs(), 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0 * a.signum(), t0 * b.signum())
}

// quotient with remainder of least absolute value
fn nearest_quotient(a: W, p: W) -> W {
    let q = a.div_euclid(p);
    let r = a.rem_euclid(p);
    if 2 * (r as i128) > (p as i128).abs() {
        q + p.signum()
    } else {
        q
    }
}

#[derive(Clone, Copy)]
struct Strategy {
    rows_first: bool,
    reverse_rows: bool,
    reverse_cols: bool,
}

const STRATEGIES: [Strategy; 4] = [
    Strategy { rows_first: true, reverse_rows: false, reverse_cols: false },
    Strategy { rows_first: false, reverse_rows: false, reverse_cols: false },
    Strategy { rows_first: true, reverse_rows: true, reverse_cols: true },
    Strategy { rows_first: false, reverse_rows: true, reverse_cols: true },
];

// Transforms above this size make later products with them overflow easily;
// another elimination order is tried first.
const COMFORTABLE_ENTRY: u128 = 1 << 48;

fn run(a: &IntMatrix, strategy: Strategy) -> Result<Reducer> {
    let mut r = Reducer {
        a: Wide::from_narrow(a),
        u: Wide::identity(a.rows()),
        u_inv: Wide::identity(a.rows()),
        v: Wide::identity(a.cols()),
        v_inv: Wide::identity(a.cols()),
    };
    r.reduce(strategy)?;
    Ok(r)
}

/// Smith normal form with both transforms and their inverses.
///
/// Elimination runs in i128. Transform growth depends on the elimination
/// order, so a few orders are tried and the one with the smallest transforms
/// is kept; `Overflow` means no order produced transforms that fit in i64.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithDecomposition> {
    let mut best: Option<(u128, Reducer)> = None;
    let mut last_err = AlgebraError::Overflow;
    for strategy in STRATEGIES {
        match run(a, strategy) {
            Ok(r) => {
                let size = r.largest_transform_entry();
                if best.as_ref().is_none_or(|(b, _)| size < *b) {
                    best = Some((size, r));
                }
                if size <= COMFORTABLE_ENTRY {
                    break;
                }
            }
            Err(e) => last_err = e,
        }
    }
    let (_, r) = best.ok_or(last_err)?;
    Ok(SmithDecomposition { d: r.a.narrow()?, u: r.u.narrow()?, u_inv: r.u_inv.narrow()?, v: r.v.narrow()?, v_inv: r.v_inv.narrow()? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn one_by_one_two() {
        let a = IntMatrix::from_rows(&[vec![2]]).unwrap();
        assert_eq!(check(&a).invariant_factors(), vec![2]);
    }

    #[test]
    fn classic_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(check(&a).invariant_factors(), vec![2, 6, 12]);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in normal form; its SNF is diag(1, 6).
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&a).invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn empty_and_zero() {
        assert!(check(&IntMatrix::zeros(0, 3)).invariant_factors().is_empty());
        assert!(check(&IntMatrix::zeros(2, 2)).invariant_factors().is_empty());
    }

    #[test]
    fn zero_before_nonzero_on_diagonal() {
        let a = IntMatrix::from_rows(&[vec![0, 0], vec![0, -3]]).unwrap();
        assert_eq!(check(&a).invariant_factors(), vec![3]);
    }

    #[test]
    fn dense_matrices_that_used_to_overflow() {
        let cases = [
            vec![
                vec![-9, 3, -2, 0, -1, 6, 1, -7],
                vec![-4, -9, -9, -5, 8, -3, 2, -1],
                vec![-6, 8, -3, 8, 0, -2, 5, 4],
                vec![-9, 2, 0, -5, -1, -3, -7, 0],
                vec![7, 0, -2, 1, -5, 9, -7, 8],
                vec![-5, -4, -1, 3, -4, -3, 7, 9],
            ],
            vec![
                vec![0, -1, 2, 6, 7, -6, 0, 2],
                vec![-5, 2, 7, 3, 9, 8, -8, -6],
                vec![3, -5, 6, 0, 4, -1, 9, 2],
                vec![-8, -5, 7, -3, -4, 1, -9, -2],
                vec![9, -3, -2, 6, 6, 1, -2, 3],
                vec![8, 7, 6, -2, 9, -3, -6, 0],
                vec![8, 9, 0, 1, 0, -5, 1, 5],
            ],
        ];
        for rows in cases {
            let s = check(&IntMatrix::from_rows(&rows).unwrap());
            assert_eq!(s.rank(), rows.len());
        }
    }
}
