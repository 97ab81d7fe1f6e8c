//! Oracles independent of the crate's algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Standard Young tableaux of the `m × p` rectangle by the hook-length formula.
pub fn hook_length_rectangle(m: u32, p: u32) -> BigUint {
    let mut numerator = BigUint::one();
    for k in 1..=(m * p) {
        numerator *= k;
    }
    let mut hooks = BigUint::one();
    for row in 0..m {
        for col in 0..p {
            hooks *= (p - 1 - col) + (m - 1 - row) + 1;
        }
    }
    numerator / hooks
}

/// Elements of the small quantum cohomology ring of `Grass(m, m+p)` in the
/// Schubert basis: `(partition, q-degree) -> coefficient`.
pub type QuantumClass = BTreeMap<(Vec<u32>, u32), BigUint>;

/// Quantum Monk rule: `σ_1 * σ_λ` adds a box classically, plus
/// `q σ_{(λ_2-1, ..., λ_m-1, 0)}` when `λ_1 = p` and `λ_m >= 1`.
pub fn times_sigma1(class: &QuantumClass, m: usize, p: u32) -> QuantumClass {
    let mut out = QuantumClass::new();
    for ((lambda, degree), coefficient) in class {
        for row in 0..m {
            let fits = lambda[row] < p && (row == 0 || lambda[row - 1] > lambda[row]);
            if fits {
                let mut mu = lambda.clone();
                mu[row] += 1;
                *out.entry((mu, *degree)).or_insert_with(BigUint::zero) += coefficient;
            }
        }
        if lambda[0] == p && lambda[m - 1] >= 1 {
            let mut mu: Vec<u32> = lambda[1..].iter().map(|x| x - 1).collect();
            mu.push(0);
            *out.entry((mu, degree + 1)).or_insert_with(BigUint::zero) += coefficient;
        }
    }
    out
}

/// Coefficient of `q^d σ_{(p^m)}` in `σ_μ · σ_1^power`.
pub fn quantum_point_coefficient(mu: &[u32], m: usize, p: u32, power: u64, d: u32) -> BigUint {
    let mut class = QuantumClass::new();
    class.insert((mu.to_vec(), 0), BigUint::one());
    for _ in 0..power {
        class = times_sigma1(&class, m, p);
    }
    class
        .get(&(vec![p; m], d))
        .cloned()
        .unwrap_or_else(BigUint::zero)
}
