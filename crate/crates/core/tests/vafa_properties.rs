mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use quotdeg_core::chain::ChainCounter;
use quotdeg_core::indices::{quot_indices_up_to, Partition};
use quotdeg_core::recurrence::degree_recurrence;
use quotdeg_core::vafa::{
    alternant, degree_summand, lg_roots, powersum_determinant, schur_eval, vandermonde,
    vi_correlator, vi_degree, CorrelatorSpec, NumericConfig, IMAGINARY_RELATIVE_BOUND,
};

use common::quantum_point_coefficient;

#[test]
fn three_methods_agree() {
    let config = NumericConfig::default();
    for n in 2..=6u32 {
        for m in 1..n as usize {
            let p = n - m as u32;
            let mut counter = ChainCounter::new(n);
            for alpha in quot_indices_up_to(m, p, 18) {
                let symbol = alpha.to_schubert().unwrap();
                let chain = counter.degree(&alpha).unwrap();
                let tuple: Vec<i64> = alpha.entries().iter().map(|&a| i64::from(a)).collect();
                let recurrence = degree_recurrence(&tuple, n).unwrap();
                let numeric = vi_degree(&symbol, &config).unwrap();
                assert_eq!(chain, recurrence, "{symbol}");
                assert_eq!(
                    BigInt::from(chain.into_inner()),
                    numeric.rounded,
                    "{symbol}"
                );
                assert!(numeric.residual < 1e-6);
                assert!(numeric.imaginary < IMAGINARY_RELATIVE_BOUND * (1.0 + numeric.raw.norm()));
            }
        }
    }
}

#[test]
fn first_chern_class_powers_match_quantum_ring() {
    let config = NumericConfig::default();
    for n in 2..=6u32 {
        for m in 1..n as usize {
            let p = n - m as u32;
            for q in 0..=2u32 {
                let power = m as u32 * p + n * q;
                if power > 20 {
                    continue;
                }
                let mut powers = vec![0; m];
                powers[0] = power;
                let spec = CorrelatorSpec::new(powers, p).unwrap();
                assert_eq!(spec.q(), q);
                let value = vi_correlator(&spec, &config).unwrap();
                let expected = quantum_point_coefficient(&vec![0; m], m, p, u64::from(power), q);
                assert_eq!(value.rounded, BigInt::from(expected), "m={m} p={p} q={q}");
            }
        }
    }
}

#[test]
fn top_chern_class_power_is_a_point() {
    let config = NumericConfig::default();
    for n in 2..=6u32 {
        for m in 1..n as usize {
            let p = n - m as u32;
            let mut powers = vec![0; m];
            powers[m - 1] = p;
            let spec = CorrelatorSpec::new(powers, p).unwrap();
            assert_eq!(
                vi_correlator(&spec, &config).unwrap().rounded,
                BigInt::one()
            );
        }
    }
}

#[test]
fn powersum_determinant_is_an_indicator() {
    for m in 1..=3usize {
        for p in 1..=3u32 {
            let n = m as u32 + p;
            let rectangle = Partition::rectangle(m, p);
            for mu in Partition::all_of_size(m, m as u32 * p) {
                let value = powersum_determinant(&mu, m, n).unwrap();
                if mu == rectangle {
                    assert_eq!(value, BigRational::one());
                } else {
                    assert_eq!(value, BigRational::zero(), "{mu}");
                    // Either the first part overflows the box or the last
                    // part falls short of it; both force a zero column.
                    assert!(mu.parts()[0] > p || mu.parts()[m - 1] < p);
                }
            }
        }
    }
}

#[test]
fn bialternant_consistency() {
    let roots = lg_roots(3, 7).roots();
    let values = [roots[0], roots[2], roots[5]];
    for parts in [[0, 0, 0], [2, 1, 0], [4, 4, 1], [3, 0, 0]] {
        let mu = Partition::new(parts.to_vec()).unwrap();
        let lhs = schur_eval(&values, &mu).unwrap() * vandermonde(&values);
        let rhs = alternant(&values, &mu).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), "{mu}");
    }
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

proptest! {
    #[test]
    fn summands_are_symmetric(
        angles in proptest::collection::vec(0.0..std::f64::consts::TAU, 3),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        parts in (0u32..4, 0u32..4, 0u32..4),
        exponent in 0u64..12,
    ) {
        let mut sorted = [parts.0, parts.1, parts.2];
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mu = Partition::new(sorted.to_vec()).unwrap();
        let values: Vec<Complex64> = angles.iter().map(|&a| unit(a)).collect();
        let permuted: Vec<Complex64> = perm.iter().map(|&i| values[i]).collect();
        let a = degree_summand(&values, &mu, exponent).unwrap();
        let b = degree_summand(&permuted, &mu, exponent).unwrap();
        prop_assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn schur_values_are_symmetric(
        angles in proptest::collection::vec(0.0..std::f64::consts::TAU, 3),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let values: Vec<Complex64> = angles.iter().map(|&a| unit(a)).collect();
        prop_assume!(vandermonde(&values).norm() > 1e-3);
        let permuted: Vec<Complex64> = perm.iter().map(|&i| values[i]).collect();
        let mu = Partition::new(vec![3, 1, 0]).unwrap();
        let a = schur_eval(&values, &mu).unwrap();
        let b = schur_eval(&permuted, &mu).unwrap();
        prop_assert!((a - b).norm() < 1e-8 * (1.0 + a.norm()));
    }
}
