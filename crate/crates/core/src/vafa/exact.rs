//! Exact integer identities for power sums over all Landau–Ginzburg roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::indices::Partition;

/// `p(k) = Σ_y y^k` over the `n` roots of `z^n + (-1)^m`:
/// `n (-1)^{j(m-1)}` when `k = j n`, otherwise `0`.
pub fn power_sum(k: u64, m: usize, n: u32) -> i64 {
    let n64 = u64::from(n);
    if !k.is_multiple_of(n64) {
        return 0;
    }
    let j = k / n64;
    if (j * (m as u64 - 1)).is_multiple_of(2) {
        i64::from(n)
    } else {
        -i64::from(n)
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn integer_determinant(mut matrix: Vec<Vec<BigInt>>) -> BigInt {
    let size = matrix.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut previous = BigInt::one();
    for k in 0..size {
        if matrix[k][k].is_zero() {
            match (k + 1..size).find(|&r| !matrix[r][k].is_zero()) {
                Some(r) => {
                    matrix.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = &matrix[i][j] * &matrix[k][k] - &matrix[i][k] * &matrix[k][j];
                matrix[i][j] = value / &previous;
            }
        }
        previous = matrix[k][k].clone();
    }
    sign * &matrix[size - 1][size - 1]
}

/// `det[p(μ_j + m + i - j)]_{i,j=1..m} / n^m`, with `μ` padded by zeros to
/// `m` parts. Returns `None` if `μ` has more than `m` parts.
pub fn powersum_determinant(mu: &Partition, m: usize, n: u32) -> Option<BigRational> {
    if mu.len() > m {
        return None;
    }
    let part = |j: usize| u64::from(mu.parts().get(j).copied().unwrap_or(0));
    let matrix = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    // 0-based: μ_j + m + i - j with i, j shifted by one cancel.
                    let k = part(j) + m as u64 + i as u64 - j as u64;
                    BigInt::from(power_sum(k, m, n))
                })
                .collect()
        })
        .collect();
    let det = integer_determinant(matrix);
    Some(BigRational::new(det, BigInt::from(n).pow(m as u32)))
}
