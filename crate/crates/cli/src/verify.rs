//! Exhaustive cross-checks on small cases.
//!
//! Work is split per `(m, p)` shape; shapes run through an order-preserving
//! parallel map and their tallies are merged in a fixed order, so the report
//! is byte-identical between runs.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use quotdeg_core::chain::{degree_bruteforce_bounded, ChainCounter};
use quotdeg_core::indices::quot_indices_up_to;
use quotdeg_core::parallel::map_ordered;
use quotdeg_core::vafa::powersum_determinant;
use quotdeg_core::{
    degree_recurrence, quot_degree, vi_degree, CompositeIndex, Execution, NumericConfig, Partition,
    SchubertSymbol,
};

use crate::report::SuiteReport;

/// Indices above this dimension are too expensive for the brute-force oracle.
pub const BRUTE_FORCE_DIMENSION: u64 = 8;

/// Largest offset exercised by the single-row suite.
const SINGLE_ROW_MAX_Q: u32 = 4;

pub const SUITES: [&str; 8] = [
    "base_case",
    "classical",
    "cross_method",
    "pieri",
    "brute_force",
    "single_row",
    "order",
    "powersum",
];

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub max_n: u32,
    pub max_dimension: u64,
    pub numeric: NumericConfig,
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    checked: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

type Tallies = [Tally; SUITES.len()];

const BASE: usize = 0;
const CLASSICAL: usize = 1;
const CROSS: usize = 2;
const PIERI: usize = 3;
const BRUTE: usize = 4;
const SINGLE_ROW: usize = 5;
const ORDER: usize = 6;
const POWERSUM: usize = 7;

fn shapes(max_n: u32) -> Vec<(usize, u32)> {
    (2..=max_n)
        .flat_map(|n| (1..n as usize).map(move |m| (m, n - m as u32)))
        .collect()
}

/// The shape whose memo table gets corrupted under fault injection, and the
/// index whose entry is overwritten.
fn fault_site(max_n: u32) -> ((usize, u32), CompositeIndex) {
    let m = (max_n as usize / 2).max(1);
    let mut entries: Vec<u32> = (1..=m as u32).collect();
    *entries.last_mut().expect("m >= 1") += 1;
    let alpha = CompositeIndex::new(entries, max_n).expect("dimension one index");
    ((m, max_n - m as u32), alpha)
}

pub fn hook_length(m: u32, p: u32) -> BigUint {
    let mut numerator = BigUint::one();
    for k in 1..=m * p {
        numerator *= k;
    }
    let mut hooks = BigUint::one();
    for row in 0..m {
        for col in 0..p {
            hooks *= (m - row) + (p - col) - 1;
        }
    }
    numerator / hooks
}

fn to_int(value: &BigUint) -> BigInt {
    BigInt::from(value.clone())
}

fn sweep_shape(m: usize, p: u32, config: &SweepConfig) -> Tallies {
    let n = m as u32 + p;
    let mut tallies: Tallies = Default::default();
    let mut counter = ChainCounter::with_execution(n, Execution::Sequential);
    let numeric = NumericConfig {
        execution: Execution::Sequential,
        ..config.numeric
    };
    if config.inject_fault {
        let (shape, alpha) = fault_site(config.max_n);
        if shape == (m, p) {
            counter.overwrite_entry(&alpha, BigUint::from(2u32));
        }
    }

    let bottom = CompositeIndex::bottom(m, n).expect("valid shape");
    let bottom_symbol = bottom.to_schubert().expect("bottom is a quot index");
    let chain = counter.degree(&bottom).map(|v| v.into_inner());
    let recurrence = degree_recurrence(&tuple(&bottom), n).map(|v| v.into_inner());
    let numeric_value = vi_degree(&bottom_symbol, &numeric).map(|r| r.rounded);
    tallies[BASE].check(
        chain.as_ref().is_ok_and(BigUint::is_one)
            && recurrence.as_ref().is_ok_and(BigUint::is_one)
            && numeric_value.as_ref().is_ok_and(BigInt::is_one),
        || format!("bottom ({bottom}) n={n}: chain={chain:?} recurrence={recurrence:?} vi={numeric_value:?}"),
    );

    let expected = hook_length(m as u32, p);
    let classical = quot_degree(m, p, 0).map(|v| v.into_inner());
    tallies[CLASSICAL].check(classical.as_ref() == Ok(&expected), || {
        format!("m={m} p={p} q=0: recurrence={classical:?} hook_length={expected}")
    });

    for alpha in quot_indices_up_to(m, p, config.max_dimension) {
        let symbol = alpha
            .to_schubert()
            .expect("enumerated indices are quot indices");
        let chain = match counter.degree(&alpha) {
            Ok(value) => value.into_inner(),
            Err(err) => {
                tallies[CROSS].check(false, || format!("alpha=({alpha}) n={n}: {err}"));
                continue;
            }
        };
        let recurrence = degree_recurrence(&tuple(&alpha), n).map(|v| v.into_inner());
        let numeric_value = vi_degree(&symbol, &numeric).map(|r| r.rounded);
        tallies[CROSS].check(
            recurrence.as_ref() == Ok(&chain) && numeric_value.as_ref() == Ok(&to_int(&chain)),
            || {
                format!(
                    "alpha=({alpha}) symbol={symbol} n={n}: chain={chain} recurrence={} vi={}",
                    display(&recurrence),
                    display(&numeric_value)
                )
            },
        );

        if !alpha.is_bottom() {
            let covers = alpha.lower_covers();
            let sum: BigUint = covers
                .iter()
                .map(|beta| {
                    counter
                        .degree(beta)
                        .map(|v| v.into_inner())
                        .unwrap_or_default()
                })
                .sum();
            tallies[PIERI].check(sum == chain, || {
                format!("alpha=({alpha}) n={n}: chain={chain} sum over lower covers={sum}")
            });
        }

        if alpha.dimension() as u64 <= config.max_dimension.min(BRUTE_FORCE_DIMENSION) {
            let brute = degree_bruteforce_bounded(&alpha, BRUTE_FORCE_DIMENSION as i64)
                .map(|v| v.into_inner());
            tallies[BRUTE].check(brute.as_ref() == Ok(&chain), || {
                format!(
                    "alpha=({alpha}) n={n}: memoised={chain} brute_force={}",
                    display(&brute)
                )
            });
            let lower: Vec<CompositeIndex> = alpha.lower_set().expect("quot index").collect();
            let from_relation: Vec<CompositeIndex> = lower
                .into_iter()
                .filter(|beta| alpha.covers(beta).unwrap_or(false))
                .collect();
            tallies[PIERI].check(from_relation == alpha.lower_covers(), || {
                format!("alpha=({alpha}) n={n}: lower covers disagree with the cover relation")
            });
        }
    }

    if m == 1 {
        for q in 0..=SINGLE_ROW_MAX_Q {
            let symbol = SchubertSymbol::top(1, p, q).expect("valid shape");
            let recurrence = quot_degree(1, p, q).map(|v| v.into_inner());
            let chain = counter
                .degree(&symbol.to_composite())
                .map(|v| v.into_inner());
            let numeric_value = vi_degree(&symbol, &numeric).map(|r| r.rounded);
            tallies[SINGLE_ROW].check(
                recurrence.as_ref().is_ok_and(BigUint::is_one)
                    && chain.as_ref().is_ok_and(BigUint::is_one)
                    && numeric_value.as_ref().is_ok_and(BigInt::is_one),
                || {
                    format!(
                        "p={p} q={q}: recurrence={} chain={} vi={}",
                        display(&recurrence),
                        display(&chain),
                        display(&numeric_value)
                    )
                },
            );
        }
    }
    tallies
}

fn display<T: std::fmt::Display, E: std::fmt::Display>(value: &Result<T, E>) -> String {
    match value {
        Ok(v) => v.to_string(),
        Err(e) => format!("error ({e})"),
    }
}

fn tuple(alpha: &CompositeIndex) -> Vec<i64> {
    alpha.entries().iter().map(|&a| i64::from(a)).collect()
}

fn sweep_order(m: usize, n: u32) -> Tally {
    let mut tally = Tally::default();
    let elements: Vec<CompositeIndex> = (1..=3 * n)
        .combinations(m)
        .filter_map(|entries| CompositeIndex::new(entries, n).ok())
        .filter(CompositeIndex::is_quot_index)
        .collect();
    for a in &elements {
        for b in &elements {
            let sequence = a.leq_sequence(b);
            let componentwise = a.leq(b);
            tally.check(sequence.is_ok() && sequence == componentwise, || {
                format!(
                    "({a}) vs ({b}) n={n}: sequence={sequence:?} componentwise={componentwise:?}"
                )
            });
        }
    }
    tally
}

fn sweep_powersum() -> Tally {
    let mut tally = Tally::default();
    for m in 1..=3usize {
        for p in 1..=3u32 {
            let n = m as u32 + p;
            let rectangle = Partition::rectangle(m, p);
            for mu in Partition::all_of_size(m, m as u32 * p) {
                let value = powersum_determinant(&mu, m, n);
                let expected = if mu == rectangle {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                tally.check(value.as_ref() == Some(&expected), || {
                    format!("mu=({mu}) m={m} p={p}: determinant={value:?} expected={expected}")
                });
            }
        }
    }
    tally
}

pub fn run_sweep(config: &SweepConfig) -> Vec<SuiteReport> {
    let execution = config.numeric.execution;
    let shapes = shapes(config.max_n);
    let per_shape = map_ordered(execution, &shapes, |&(m, p)| sweep_shape(m, p, config));
    let orders = map_ordered(execution, &shapes, |&(m, p)| sweep_order(m, m as u32 + p));

    let mut totals: Tallies = Default::default();
    for tallies in per_shape {
        for (total, tally) in totals.iter_mut().zip(tallies) {
            total.absorb(tally);
        }
    }
    for tally in orders {
        totals[ORDER].absorb(tally);
    }
    totals[POWERSUM].absorb(sweep_powersum());

    SUITES
        .iter()
        .zip(totals)
        .map(|(name, tally)| SuiteReport {
            name: (*name).to_string(),
            checked: tally.checked.to_string(),
            failures: tally.failures.to_string(),
            first_failure: tally.first,
        })
        .collect()
}
