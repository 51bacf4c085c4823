/// `✠_1^k = k + Σ_{1≤j≤k} |x_j|`. `degrees[j-1]` is `|x_j|`.
///
/// # Panics
/// If `k > degrees.len()`.
pub fn maltese(k: usize, degrees: &[i64]) -> i64 {
    k as i64 + degrees[..k].iter().sum::<i64>()
}

/// `† = Σ_k k·|x_k|`, with `degrees[k-1] = |x_k|`.
pub fn dagger(degrees: &[i64]) -> i64 {
    degrees.iter().enumerate().map(|(i, d)| (i as i64 + 1) * d).sum()
}

/// `(−1)^e`.
pub fn sign_of(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
