//! Reference values computed without touching the crate's algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Standard tableaux of an `m × p` rectangle, by the hook-length formula.
pub fn hook_length_rectangle(m: u32, p: u32) -> BigUint {
    let mut factorial = BigUint::one();
    for k in 1..=m * p {
        factorial *= k;
    }
    let mut hooks = BigUint::one();
    for row in 1..=m {
        for col in 1..=p {
            hooks *= (m - row) + (p - col) + 1;
        }
    }
    factorial / hooks
}

/// `(partition, power of q) -> coefficient` in the quantum cohomology of
/// `Grass(m, m+p)`.
pub type QuantumClass = BTreeMap<(Vec<u32>, u32), BigUint>;

/// Multiplication by `σ_1` via the quantum Monk rule.
pub fn times_sigma1(class: &QuantumClass, m: usize, p: u32) -> QuantumClass {
    let mut out = QuantumClass::new();
    for ((lambda, degree), coefficient) in class {
        for row in 0..m {
            if lambda[row] < p && (row == 0 || lambda[row - 1] > lambda[row]) {
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

pub fn sigma1_power(m: usize, p: u32, power: u32) -> QuantumClass {
    let mut class = QuantumClass::new();
    class.insert((vec![0; m], 0), BigUint::one());
    for _ in 0..power {
        class = times_sigma1(&class, m, p);
    }
    class
}

pub fn coefficient(class: &QuantumClass, lambda: &[u32], degree: u32) -> BigUint {
    class
        .get(&(lambda.to_vec(), degree))
        .cloned()
        .unwrap_or_else(BigUint::zero)
}
