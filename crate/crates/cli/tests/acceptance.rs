//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use quotdeg_core::chain::{degree_bruteforce, ChainCounter};
use quotdeg_core::indices::quot_indices_up_to;
use quotdeg_core::vafa::powersum_determinant;
use quotdeg_core::{
    degree_recurrence, quot_degree, vi_correlator, vi_degree, CompositeIndex, CorrelatorSpec,
    NumericConfig, Partition, SchubertSymbol,
};

use common::{coefficient, hook_length_rectangle, sigma1_power};

type Outcome = Result<String, String>;

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn tuple(alpha: &CompositeIndex) -> Vec<i64> {
    alpha.entries().iter().map(|&a| i64::from(a)).collect()
}

fn shapes(max_n: u32) -> impl Iterator<Item = (usize, u32)> {
    (2..=max_n).flat_map(|n| (1..n as usize).map(move |m| (m, n - m as u32)))
}

fn base_case() -> Outcome {
    let config = NumericConfig::default();
    let mut checked = 0;
    for m in 1..=4usize {
        for p in 1..=4u32 {
            let n = m as u32 + p;
            let bottom = CompositeIndex::bottom(m, n).map_err(|e| e.to_string())?;
            let symbol = bottom.to_schubert().map_err(|e| e.to_string())?;
            let chain = ChainCounter::new(n)
                .degree(&bottom)
                .map_err(|e| e.to_string())?;
            let recurrence = degree_recurrence(&tuple(&bottom), n).map_err(|e| e.to_string())?;
            let numeric = vi_degree(&symbol, &config).map_err(|e| e.to_string())?;
            ensure(
                chain == 1 && recurrence == 1 && numeric.rounded.is_one(),
                || {
                    format!(
                        "m={m} p={p}: chain={chain} recurrence={recurrence} vi={}",
                        numeric.rounded
                    )
                },
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} shapes"))
}

fn classical() -> Outcome {
    for m in 1..=4u32 {
        for p in 1..=4u32 {
            let expected = hook_length_rectangle(m, p);
            let value = quot_degree(m as usize, p, 0).map_err(|e| e.to_string())?;
            let top = SchubertSymbol::top(m as usize, p, 0).map_err(|e| e.to_string())?;
            let chain = ChainCounter::new(m + p)
                .degree(&top.to_composite())
                .map_err(|e| e.to_string())?;
            ensure(
                *value.value() == expected && *chain.value() == expected,
                || format!("m={m} p={p}: recurrence={value} chain={chain} hook length={expected}"),
            )?;
        }
    }
    let spot = [(2, 2, 2u32), (2, 3, 5), (3, 3, 42)];
    for (m, p, expected) in spot {
        ensure(
            quot_degree(m, p, 0).map_err(|e| e.to_string())? == u64::from(expected),
            || format!("m={m} p={p} should have degree {expected}"),
        )?;
    }
    Ok("16 shapes".into())
}

fn three_way() -> Outcome {
    let config = NumericConfig::default();
    let mut checked = 0;
    let mut worst = 0.0f64;
    for (m, p) in shapes(6) {
        let n = m as u32 + p;
        let mut counter = ChainCounter::new(n);
        for alpha in quot_indices_up_to(m, p, 18) {
            let symbol = alpha.to_schubert().map_err(|e| e.to_string())?;
            let chain = counter.degree(&alpha).map_err(|e| e.to_string())?;
            let recurrence = degree_recurrence(&tuple(&alpha), n).map_err(|e| e.to_string())?;
            let numeric = vi_degree(&symbol, &config).map_err(|e| format!("{symbol}: {e}"))?;
            ensure(
                chain == recurrence
                    && numeric.rounded == BigInt::from(chain.value().clone())
                    && numeric.residual < 1e-6,
                || {
                    format!(
                        "{symbol}: chain={chain} recurrence={recurrence} vi={} residual={:e}",
                        numeric.rounded, numeric.residual
                    )
                },
            )?;
            worst = worst.max(numeric.residual);
            checked += 1;
        }
    }
    Ok(format!("{checked} indices, worst residual {worst:.1e}"))
}

fn pieri() -> Outcome {
    let mut checked = 0;
    for (m, p) in shapes(6) {
        let mut counter = ChainCounter::new(m as u32 + p);
        for alpha in quot_indices_up_to(m, p, 20) {
            let value = counter.degree(&alpha).map_err(|e| e.to_string())?;
            if alpha.is_bottom() {
                continue;
            }
            let mut sum = BigUint::zero();
            for beta in alpha.lower_covers() {
                sum += counter
                    .degree(&beta)
                    .map_err(|e| e.to_string())?
                    .into_inner();
            }
            ensure(*value.value() == sum, || {
                format!("({alpha}): {value} vs {sum}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} indices"))
}

fn brute_force() -> Outcome {
    let mut checked = 0;
    for (m, p) in shapes(5) {
        let mut counter = ChainCounter::new(m as u32 + p);
        for alpha in quot_indices_up_to(m, p, 8) {
            let memoised = counter.degree(&alpha).map_err(|e| e.to_string())?;
            let brute = degree_bruteforce(&alpha).map_err(|e| e.to_string())?;
            ensure(memoised == brute, || {
                format!("({alpha}): {memoised} vs {brute}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} indices"))
}

fn quantum() -> Outcome {
    let ring = sigma1_power(2, 2, 8);
    let point = coefficient(&ring, &[2, 2], 1);
    let unit = coefficient(&ring, &[0, 0], 2);
    ensure(
        point == BigUint::from(8u32) && unit == BigUint::from(8u32),
        || format!("quantum ring oracle gives {point} q σ22 + {unit} q^2"),
    )?;
    let degree = quot_degree(2, 2, 1).map_err(|e| e.to_string())?;
    ensure(*degree.value() == point, || {
        format!("deg K^1_(2,2) = {degree}")
    })?;
    let spec = CorrelatorSpec::new(vec![8, 0], 2).map_err(|e| e.to_string())?;
    let correlator = vi_correlator(&spec, &NumericConfig::default()).map_err(|e| e.to_string())?;
    ensure(
        spec.q() == 1 && correlator.rounded == BigInt::from(point.clone()),
        || format!("<X1^8> = {} with q = {}", correlator.rounded, spec.q()),
    )?;
    Ok(format!(
        "degree {degree}, correlator {}",
        correlator.rounded
    ))
}

fn single_row() -> Outcome {
    let config = NumericConfig::default();
    for p in 1..=4u32 {
        for q in 0..=4u32 {
            let degree = quot_degree(1, p, q).map_err(|e| e.to_string())?;
            let symbol = SchubertSymbol::top(1, p, q).map_err(|e| e.to_string())?;
            let numeric = vi_degree(&symbol, &config).map_err(|e| e.to_string())?;
            ensure(degree == 1 && numeric.rounded.is_one(), || {
                format!("p={p} q={q}: recurrence={degree} vi={}", numeric.rounded)
            })?;
        }
    }
    Ok("20 cases".into())
}

fn powersum() -> Outcome {
    let mut checked = 0;
    for m in 1..=3usize {
        for p in 1..=3u32 {
            let rectangle = Partition::rectangle(m, p);
            for mu in Partition::all_of_size(m, m as u32 * p) {
                let value = powersum_determinant(&mu, m, m as u32 + p)
                    .ok_or_else(|| format!("({mu}) rejected"))?;
                let expected = if mu == rectangle {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                ensure(value == expected, || {
                    format!("m={m} p={p} μ=({mu}): {value}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} partitions"))
}

fn order_agreement() -> Outcome {
    let mut pairs = 0u64;
    for n in 2..=5u32 {
        for m in 1..n as usize {
            let elements: Vec<CompositeIndex> = (1..=3 * n)
                .combinations(m)
                .filter_map(|e| CompositeIndex::new(e, n).ok())
                .filter(CompositeIndex::is_quot_index)
                .collect();
            for a in &elements {
                for b in &elements {
                    let sequence = a.leq_sequence(b).map_err(|e| e.to_string())?;
                    let componentwise = a.leq(b).map_err(|e| e.to_string())?;
                    ensure(sequence == componentwise, || {
                        format!("({a}) vs ({b}) n={n}")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn run_verify(extra: &[&str]) -> Result<Vec<u8>, String> {
    let output = Command::new(env!("CARGO_BIN_EXE_quotdeg"))
        .arg("verify")
        .args(extra)
        .env_remove("QUOTDEG_PRECISION")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(output.status.code() == Some(0), || {
        format!("verify exited with {:?}", output.status.code())
    })?;
    Ok(output.stdout)
}

fn determinism() -> Outcome {
    let first = run_verify(&[])?;
    let second = run_verify(&[])?;
    ensure(first == second, || "two runs differ".into())?;
    let sequential = run_verify(&["--sequential"])?;
    ensure(first == sequential, || "sequential run differs".into())?;
    Ok(format!("{} bytes, 3 runs", first.len()))
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            number: 1,
            name: "bottom index has degree one",
            budget: Duration::from_secs(1),
            run: base_case,
        },
        Criterion {
            number: 2,
            name: "Grassmannian degrees match the hook-length formula",
            budget: Duration::from_secs(1),
            run: classical,
        },
        Criterion {
            number: 3,
            name: "chain, recurrence and fixed-point sum agree",
            budget: Duration::from_secs(60),
            run: three_way,
        },
        Criterion {
            number: 4,
            name: "degree is the sum over lower covers",
            budget: Duration::from_secs(30),
            run: pieri,
        },
        Criterion {
            number: 5,
            name: "memoised count matches brute force",
            budget: Duration::from_secs(30),
            run: brute_force,
        },
        Criterion {
            number: 6,
            name: "quantum ring of Grass(2,4)",
            budget: Duration::from_secs(1),
            run: quantum,
        },
        Criterion {
            number: 7,
            name: "single-row Quot schemes have degree one",
            budget: Duration::from_secs(1),
            run: single_row,
        },
        Criterion {
            number: 8,
            name: "power-sum determinant is the point indicator",
            budget: Duration::from_secs(1),
            run: powersum,
        },
        Criterion {
            number: 9,
            name: "sequence order equals componentwise order",
            budget: Duration::from_secs(10),
            run: order_agreement,
        },
        Criterion {
            number: 10,
            name: "verify output is byte-identical across runs",
            budget: Duration::from_secs(60),
            run: determinism,
        },
    ];
    let mut failed = 0;
    for criterion in &criteria {
        let start = Instant::now();
        let result = (criterion.run)();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= criterion.budget => Ok(detail),
            Ok(detail) => Err(format!("{detail}; over budget of {:?}", criterion.budget)),
            Err(message) => Err(message),
        };
        match verdict {
            Ok(detail) => println!(
                "PASS criterion {:>2}: {} ({detail}; {:.3}s)",
                criterion.number,
                criterion.name,
                elapsed.as_secs_f64()
            ),
            Err(message) => {
                failed += 1;
                println!(
                    "FAIL criterion {:>2}: {} ({message}; {:.3}s)",
                    criterion.number,
                    criterion.name,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
