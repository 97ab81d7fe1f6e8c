//! Fixed-point sums over critical points of the Landau–Ginzburg potential
//! `W = Σ (q_i^{n+1} / (n+1) + (-1)^m q_i)`.
//!
//! Critical points are unordered `m`-subsets of the `n` roots of
//! `z^n + (-1)^m`. On them the Hessian weight is `n^m / ((q_1⋯q_m) Δ²)`, so a
//! correlator `⟨X_1^{a_1} ⋯ X_m^{a_m}⟩` equals
//!
//! ```text
//! (-1)^{m(m-1)/2} / n^m · Σ_subsets e_1^{a_1} ⋯ e_m^{a_m} · (q_1⋯q_m) · Δ²
//! ```
//!
//! and `deg Z_i^d` is the same sum with `e_1^{dim Z_i^d} · s_μ` in place of
//! the monomial. Every summand is computed in a fixed subset order and reduced
//! with one compensated sum, so results are reproducible bit for bit whether
//! the summands are produced sequentially or in parallel.

mod backend;
mod exact;

pub use backend::{Backend, BigComplex, DoubleBackend, MultiBackend, DOUBLE_PRECISION};
pub use exact::{integer_determinant, power_sum, powersum_determinant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::indices::{IndexError, Partition, SchubertSymbol};
use crate::parallel::{map_ordered, Execution};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Accepted results satisfy `|Im| < IMAGINARY_RELATIVE_BOUND · (1 + |raw|)`.
pub const IMAGINARY_RELATIVE_BOUND: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("sum of l*a_l is {weight}, which is not m*p = {base} plus a multiple of n = {n}")]
    DimensionMismatch { weight: u64, base: u64, n: u32 },
    #[error("need m >= 1 and p >= 1 (got m = {m}, p = {p})")]
    EmptyGrassmannian { m: usize, p: u32 },
    #[error(
        "result {} is not an integer within tolerance {tolerance:e} (residual {:e}, imaginary part {:e})",
        .result.raw, .result.residual, .result.imaginary
    )]
    Tolerance {
        result: NumericResult,
        tolerance: f64,
    },
    #[error("|{}| is beyond safe rounding at {precision} bits; raise the precision", .result.rounded)]
    UnsafeMagnitude {
        result: NumericResult,
        precision: u32,
    },
    #[error("evaluation points must be pairwise distinct")]
    CoincidentValues,
    #[error("partition has more parts than there are variables")]
    PartitionTooLong,
}

impl NumericError {
    /// The unaccepted numeric value, when one was computed.
    pub fn result(&self) -> Option<&NumericResult> {
        match self {
            Self::Tolerance { result, .. } | Self::UnsafeMagnitude { result, .. } => Some(result),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    /// Working precision in bits; anything up to 53 runs in `f64`.
    pub precision: u32,
    pub tolerance: f64,
    pub execution: Execution,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            precision: DOUBLE_PRECISION,
            tolerance: DEFAULT_TOLERANCE,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericResult {
    pub raw: Complex64,
    pub rounded: BigInt,
    pub residual: f64,
    pub imaginary: f64,
    pub precision: u32,
}

impl NumericResult {
    fn from_value<B: Backend>(backend: &B, value: &B::Value) -> Self {
        let (rounded, residual, imaginary) = backend.round_real(value);
        Self {
            raw: backend.to_c64(value),
            rounded,
            residual,
            imaginary,
            precision: backend.precision(),
        }
    }

    fn accept(self, tolerance: f64) -> Result<Self, NumericError> {
        let imaginary_bound = tolerance.min(IMAGINARY_RELATIVE_BOUND * (1.0 + self.raw.norm()));
        if !(self.residual < tolerance && self.imaginary < imaginary_bound) {
            return Err(NumericError::Tolerance {
                result: self,
                tolerance,
            });
        }
        let safe_bits = u64::from(self.precision.saturating_sub(1));
        if self.rounded.abs().bits() > safe_bits {
            let precision = self.precision;
            return Err(NumericError::UnsafeMagnitude {
                result: self,
                precision,
            });
        }
        Ok(self)
    }
}

/// The roots `y` of `z^n + (-1)^m`, held as powers of `ζ = exp(πi / n)`:
/// `y_k = ζ^{2k}` for odd `m` and `ζ^{2k+1}` for even `m`. Every power of a
/// root is a table lookup.
#[derive(Debug, Clone)]
pub struct LgRootSystem<B: Backend> {
    backend: B,
    m: usize,
    n: u32,
    table: Vec<B::Value>,
}

impl<B: Backend> LgRootSystem<B> {
    pub fn new(backend: B, m: usize, n: u32) -> Self {
        let order = 2 * u64::from(n);
        let table = (0..order)
            .map(|j| backend.root_of_unity(j, order))
            .collect();
        Self {
            backend,
            m,
            n,
            table,
        }
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn exponent(&self, k: usize) -> u64 {
        let shift = if self.m.is_multiple_of(2) { 1 } else { 0 };
        2 * k as u64 + shift
    }

    pub fn root(&self, k: usize) -> &B::Value {
        &self.table[self.exponent(k) as usize]
    }

    /// `y_k^power`, exact up to the accuracy of the table.
    pub fn root_power(&self, k: usize, power: u64) -> B::Value {
        let order = self.table.len() as u64;
        self.table[((self.exponent(k) % order) * (power % order) % order) as usize].clone()
    }

    pub fn roots(&self) -> Vec<B::Value> {
        (0..self.n as usize).map(|k| self.root(k).clone()).collect()
    }

    /// `max_k |y_k^n - (-1)^{m+1}|`, with `y^n` evaluated by repeated
    /// multiplication rather than table lookup.
    pub fn max_defect(&self) -> f64 {
        let b = &self.backend;
        let target = b.lift_int(if self.m % 2 == 1 { 1 } else { -1 });
        self.roots()
            .iter()
            .map(|y| {
                b.to_c64(&b.sub(&b.pow(y, u64::from(self.n)), &target))
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    fn subsets(&self) -> Vec<Vec<usize>> {
        (0..self.n as usize).combinations(self.m).collect()
    }
}

/// Root system in double precision.
pub fn lg_roots(m: usize, n: u32) -> LgRootSystem<DoubleBackend> {
    LgRootSystem::new(DoubleBackend, m, n)
}

/// `Δ = Π_{j<k} (q_j - q_k)`.
pub fn vandermonde_with<B: Backend>(backend: &B, values: &[B::Value]) -> B::Value {
    let mut result = backend.one();
    for (a, b) in values.iter().tuple_combinations() {
        result = backend.mul(&result, &backend.sub(a, b));
    }
    result
}

pub fn vandermonde(values: &[Complex64]) -> Complex64 {
    vandermonde_with(&DoubleBackend, values)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant_with<B: Backend>(backend: &B, mut matrix: Vec<Vec<B::Value>>) -> B::Value {
    let size = matrix.len();
    let mut det = backend.one();
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&a, &b| {
                let na = backend.to_c64(&matrix[a][col]).norm_sqr();
                let nb = backend.to_c64(&matrix[b][col]).norm_sqr();
                na.total_cmp(&nb)
            })
            .expect("nonempty range");
        if backend.to_c64(&matrix[pivot][col]) == Complex64::new(0.0, 0.0) {
            return backend.zero();
        }
        if pivot != col {
            matrix.swap(pivot, col);
            det = backend.sub(&backend.zero(), &det);
        }
        det = backend.mul(&det, &matrix[col][col]);
        let (upper, lower) = matrix.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let factor = backend.div(&row[col], &pivot_row[col]);
            for (entry, above) in row.iter_mut().zip(pivot_row).skip(col + 1) {
                let delta = backend.mul(&factor, above);
                *entry = backend.sub(entry, &delta);
            }
        }
    }
    det
}

fn padded_parts(mu: &Partition, m: usize) -> Result<Vec<u64>, NumericError> {
    if mu.len() > m {
        return Err(NumericError::PartitionTooLong);
    }
    Ok((0..m)
        .map(|j| u64::from(mu.parts().get(j).copied().unwrap_or(0)))
        .collect())
}

/// `det[q_i^{μ_j + m - j + shift}]` (0-based `j`).
fn alternant_with<B: Backend>(
    backend: &B,
    values: &[B::Value],
    parts: &[u64],
    shift: u64,
) -> B::Value {
    let m = values.len() as u64;
    let matrix = values
        .iter()
        .map(|q| {
            parts
                .iter()
                .enumerate()
                .map(|(j, &part)| backend.pow(q, part + m - 1 - j as u64 + shift))
                .collect()
        })
        .collect();
    determinant_with(backend, matrix)
}

/// Schur polynomial `s_μ` as the bialternant
/// `det[q_i^{μ_j + m - j}] / det[q_i^{m - j}]`.
pub fn schur_eval_with<B: Backend>(
    backend: &B,
    values: &[B::Value],
    mu: &Partition,
) -> Result<B::Value, NumericError> {
    let parts = padded_parts(mu, values.len())?;
    let denominator = vandermonde_with(backend, values);
    if backend.to_c64(&denominator) == Complex64::new(0.0, 0.0) {
        return Err(NumericError::CoincidentValues);
    }
    let numerator = alternant_with(backend, values, &parts, 0);
    Ok(backend.div(&numerator, &denominator))
}

pub fn schur_eval(values: &[Complex64], mu: &Partition) -> Result<Complex64, NumericError> {
    schur_eval_with(&DoubleBackend, values, mu)
}

/// `det[q_i^{μ_j + m - j}]`, the numerator of the bialternant.
pub fn alternant(values: &[Complex64], mu: &Partition) -> Result<Complex64, NumericError> {
    let parts = padded_parts(mu, values.len())?;
    Ok(alternant_with(&DoubleBackend, values, &parts, 0))
}

/// One term `(Σq)^E · Δ · det[q_i^{μ_j + m + 1 - j}]` of the degree sum, which
/// equals `(q_1⋯q_m)(Σq)^E Δ² s_μ` without dividing by `Δ`.
pub fn degree_summand_with<B: Backend>(
    backend: &B,
    values: &[B::Value],
    mu: &Partition,
    exponent: u64,
) -> Result<B::Value, NumericError> {
    let parts = padded_parts(mu, values.len())?;
    let sum = values
        .iter()
        .fold(backend.zero(), |acc, q| backend.add(&acc, q));
    let power = backend.pow(&sum, exponent);
    let delta = vandermonde_with(backend, values);
    let shifted = alternant_with(backend, values, &parts, 1);
    Ok(backend.mul(&backend.mul(&power, &delta), &shifted))
}

pub fn degree_summand(
    values: &[Complex64],
    mu: &Partition,
    exponent: u64,
) -> Result<Complex64, NumericError> {
    degree_summand_with(&DoubleBackend, values, mu, exponent)
}

fn sign_and_scale<B: Backend>(backend: &B, total: B::Value, m: usize, n: u32) -> B::Value {
    let m64 = m as u64;
    let signed = if (m64 * (m64.saturating_sub(1)) / 2) % 2 == 1 {
        backend.sub(&backend.zero(), &total)
    } else {
        total
    };
    let divisor = backend.pow(&backend.lift_int(i64::from(n)), m64);
    backend.div(&signed, &divisor)
}

/// Unrounded degree sum for `Z_i^d` on a given root system.
pub fn vi_degree_raw<B: Backend>(
    system: &LgRootSystem<B>,
    symbol: &SchubertSymbol,
    execution: Execution,
) -> Result<B::Value, NumericError> {
    let m = symbol.m();
    let mu = symbol.partition()?;
    let parts = padded_parts(&mu, m)?;
    let exponent = symbol.dimension();
    let backend = system.backend();
    let terms = map_ordered(execution, &system.subsets(), |subset| {
        let values: Vec<B::Value> = subset.iter().map(|&k| system.root(k).clone()).collect();
        let sum = values
            .iter()
            .fold(backend.zero(), |acc, q| backend.add(&acc, q));
        let power = backend.pow(&sum, exponent);
        let delta = vandermonde_with(backend, &values);
        let matrix = subset
            .iter()
            .map(|&k| {
                parts
                    .iter()
                    .enumerate()
                    .map(|(j, &part)| system.root_power(k, part + (m - j) as u64))
                    .collect()
            })
            .collect();
        let shifted = determinant_with(backend, matrix);
        backend.mul(&backend.mul(&power, &delta), &shifted)
    });
    Ok(sign_and_scale(backend, backend.sum(&terms), m, system.n()))
}

fn check_symbol(symbol: &SchubertSymbol) -> Result<(), NumericError> {
    if symbol.p() == 0 {
        return Err(NumericError::EmptyGrassmannian {
            m: symbol.m(),
            p: 0,
        });
    }
    Ok(())
}

/// `deg Z_i^d` from the fixed-point sum, rounded and checked.
pub fn vi_degree(
    symbol: &SchubertSymbol,
    config: &NumericConfig,
) -> Result<NumericResult, NumericError> {
    check_symbol(symbol)?;
    let (m, n) = (symbol.m(), symbol.n());
    if config.precision <= DOUBLE_PRECISION {
        let system = LgRootSystem::new(DoubleBackend, m, n);
        let value = vi_degree_raw(&system, symbol, config.execution)?;
        NumericResult::from_value(system.backend(), &value).accept(config.tolerance)
    } else {
        let system = LgRootSystem::new(MultiBackend::new(config.precision), m, n);
        let value = vi_degree_raw(&system, symbol, config.execution)?;
        NumericResult::from_value(system.backend(), &value).accept(config.tolerance)
    }
}

/// A correlator request `⟨X_1^{a_1} ⋯ X_m^{a_m}⟩` on the space of degree-`q`
/// maps into `Grass(m, m + p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelatorSpec {
    powers: Vec<u32>,
    p: u32,
    q: u32,
}

impl CorrelatorSpec {
    /// Infers `q` from `Σ l a_l = m p + n q`.
    pub fn new(powers: Vec<u32>, p: u32) -> Result<Self, NumericError> {
        let m = powers.len();
        if m == 0 || p == 0 {
            return Err(NumericError::EmptyGrassmannian { m, p });
        }
        let n = m as u32 + p;
        let weight: u64 = powers
            .iter()
            .enumerate()
            .map(|(l, &a)| (l as u64 + 1) * u64::from(a))
            .sum();
        let base = m as u64 * u64::from(p);
        if weight < base || !(weight - base).is_multiple_of(u64::from(n)) {
            return Err(NumericError::DimensionMismatch { weight, base, n });
        }
        let q = ((weight - base) / u64::from(n)) as u32;
        Ok(Self { powers, p, q })
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    pub fn m(&self) -> usize {
        self.powers.len()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.m() as u32 + self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

/// Elementary symmetric polynomials `e_0, ..., e_m` of `values`.
pub fn elementary_symmetric_with<B: Backend>(backend: &B, values: &[B::Value]) -> Vec<B::Value> {
    let mut e = vec![backend.zero(); values.len() + 1];
    e[0] = backend.one();
    for (count, q) in values.iter().enumerate() {
        for l in (1..=count + 1).rev() {
            let term = backend.mul(&e[l - 1], q);
            e[l] = backend.add(&e[l], &term);
        }
    }
    e
}

/// One term `e_1^{a_1} ⋯ e_m^{a_m} · (q_1⋯q_m) · Δ²` of the correlator sum.
pub fn correlator_summand_with<B: Backend>(
    backend: &B,
    values: &[B::Value],
    powers: &[u32],
) -> B::Value {
    let e = elementary_symmetric_with(backend, values);
    let monomial = powers
        .iter()
        .enumerate()
        .fold(backend.one(), |acc, (l, &a)| {
            backend.mul(&acc, &backend.pow(&e[l + 1], u64::from(a)))
        });
    let delta = vandermonde_with(backend, values);
    let weight = backend.mul(&e[values.len()], &backend.mul(&delta, &delta));
    backend.mul(&monomial, &weight)
}

pub fn vi_correlator_raw<B: Backend>(
    system: &LgRootSystem<B>,
    spec: &CorrelatorSpec,
    execution: Execution,
) -> B::Value {
    let backend = system.backend();
    let terms = map_ordered(execution, &system.subsets(), |subset| {
        let values: Vec<B::Value> = subset.iter().map(|&k| system.root(k).clone()).collect();
        correlator_summand_with(backend, &values, spec.powers())
    });
    sign_and_scale(backend, backend.sum(&terms), spec.m(), system.n())
}

pub fn vi_correlator(
    spec: &CorrelatorSpec,
    config: &NumericConfig,
) -> Result<NumericResult, NumericError> {
    let (m, n) = (spec.m(), spec.n());
    if config.precision <= DOUBLE_PRECISION {
        let system = LgRootSystem::new(DoubleBackend, m, n);
        let value = vi_correlator_raw(&system, spec, config.execution);
        NumericResult::from_value(system.backend(), &value).accept(config.tolerance)
    } else {
        let system = LgRootSystem::new(MultiBackend::new(config.precision), m, n);
        let value = vi_correlator_raw(&system, spec, config.execution);
        NumericResult::from_value(system.backend(), &value).accept(config.tolerance)
    }
}
