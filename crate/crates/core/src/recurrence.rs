//! Degrees as the solution of the partial recurrence
//! `d(α) = Σ_l d(α_1, ..., α_l - 1, ..., α_m)`
//! with its boundary and initial conditions.
//!
//! The solver never looks at chains or covers: it evaluates the recurrence
//! bottom-up over the box `(1, ..., m) <= β <= α` and classifies every
//! decremented tuple against the four side conditions.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain::DegreeCount;
use crate::indices::{IndexError, SchubertSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("tuple {0:?} lies outside the domain of the recurrence")]
    OutsideDomain(Vec<i64>),
    #[error("offset d = {offset} exceeds q = {q}")]
    OffsetAboveDegree { offset: u32, q: u32 },
    #[error("m and p must both be positive (got m = {m}, p = {p})")]
    EmptyGrassmannian { m: usize, p: u32 },
    #[error("recurrence produced a negative value {0}")]
    Negative(BigInt),
}

/// Values imposed on the side conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conditions {
    /// `d(1, 2, ..., m)`.
    pub initial: BigInt,
    /// `d(..., k, k, ...)`.
    pub repeated: BigInt,
    /// `d(k, ..., k + n)`.
    pub wrapped: BigInt,
    /// `d(0, ..., α_m)` for `α_m < n`.
    pub floor: BigInt,
}

impl Default for Conditions {
    fn default() -> Self {
        Self {
            initial: BigInt::one(),
            repeated: BigInt::zero(),
            wrapped: BigInt::zero(),
            floor: BigInt::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TupleKind {
    Interior,
    Repeated,
    Wrapped,
    Floor,
    Outside,
}

fn classify(tuple: &[i64], n: i64) -> TupleKind {
    if tuple.is_empty() || tuple[0] < 0 {
        return TupleKind::Outside;
    }
    if tuple.windows(2).any(|w| w[0] > w[1]) {
        return TupleKind::Outside;
    }
    if tuple.windows(2).any(|w| w[0] == w[1]) {
        return TupleKind::Repeated;
    }
    let span = tuple[tuple.len() - 1] - tuple[0];
    if span == n {
        TupleKind::Wrapped
    } else if span > n {
        TupleKind::Outside
    } else if tuple[0] == 0 {
        TupleKind::Floor
    } else {
        TupleKind::Interior
    }
}

#[derive(Debug, Clone)]
pub struct Recurrence {
    n: i64,
    conditions: Conditions,
}

impl Recurrence {
    pub fn new(n: u32) -> Self {
        Self::with_conditions(n, Conditions::default())
    }

    pub fn with_conditions(n: u32, conditions: Conditions) -> Self {
        Self {
            n: i64::from(n),
            conditions,
        }
    }

    /// Evaluates `d` at an arbitrary tuple in the recurrence domain.
    pub fn evaluate(&self, tuple: &[i64]) -> Result<BigInt, RecurrenceError> {
        match classify(tuple, self.n) {
            TupleKind::Outside => Err(RecurrenceError::OutsideDomain(tuple.to_vec())),
            TupleKind::Repeated => Ok(self.conditions.repeated.clone()),
            TupleKind::Wrapped => Ok(self.conditions.wrapped.clone()),
            TupleKind::Floor => Ok(self.conditions.floor.clone()),
            TupleKind::Interior => Ok(self.solve_interior(tuple)),
        }
    }

    fn solve_interior(&self, top: &[i64]) -> BigInt {
        let m = top.len();
        let mut box_points = Vec::new();
        let mut current = Vec::with_capacity(m);
        self.collect_box(top, &mut current, &mut box_points);
        box_points.sort_by_key(|beta: &Vec<i64>| beta.iter().sum::<i64>());

        let mut table: HashMap<Vec<i64>, BigInt> = HashMap::with_capacity(box_points.len());
        for beta in box_points {
            let value = if beta.iter().enumerate().all(|(l, &b)| b == l as i64 + 1) {
                self.conditions.initial.clone()
            } else {
                let mut total = BigInt::zero();
                let mut lowered = beta.clone();
                for l in 0..m {
                    lowered[l] -= 1;
                    total += match classify(&lowered, self.n) {
                        TupleKind::Interior => &table[&lowered],
                        TupleKind::Repeated => &self.conditions.repeated,
                        TupleKind::Wrapped => &self.conditions.wrapped,
                        TupleKind::Floor => &self.conditions.floor,
                        TupleKind::Outside => unreachable!("decrement of an interior tuple"),
                    };
                    lowered[l] += 1;
                }
                total
            };
            table.insert(beta, value);
        }
        table.remove(top).expect("top of the box is interior")
    }

    /// Interior tuples `β` with `l <= β_l <= top_l` and span below `n`.
    fn collect_box(&self, top: &[i64], current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let l = current.len();
        if l == top.len() {
            out.push(current.clone());
            return;
        }
        let lo = match current.last() {
            None => 1,
            Some(&prev) => prev + 1,
        };
        let hi = match current.first() {
            None => top[0],
            Some(&first) => top[l].min(first + self.n - 1),
        };
        for value in lo..=hi {
            current.push(value);
            self.collect_box(top, current, out);
            current.pop();
        }
    }
}

fn to_count(value: BigInt) -> Result<DegreeCount, RecurrenceError> {
    match value.sign() {
        Sign::Minus => Err(RecurrenceError::Negative(value)),
        _ => Ok(DegreeCount::new(
            value.to_biguint().unwrap_or_else(BigUint::zero),
        )),
    }
}

/// The unique solution of the recurrence at `tuple`, working modulo `n`.
pub fn degree_recurrence(tuple: &[i64], n: u32) -> Result<DegreeCount, RecurrenceError> {
    to_count(Recurrence::new(n).evaluate(tuple)?)
}

/// `deg Z_i^d` inside `K^q_{m,p}`. The value does not depend on `q` beyond
/// the requirement `d <= q`.
pub fn subvariety_degree(symbol: &SchubertSymbol, q: u32) -> Result<DegreeCount, RecurrenceError> {
    if symbol.offset() > q {
        return Err(RecurrenceError::OffsetAboveDegree {
            offset: symbol.offset(),
            q,
        });
    }
    let alpha = symbol.to_composite();
    let tuple: Vec<i64> = alpha.entries().iter().map(|&a| i64::from(a)).collect();
    degree_recurrence(&tuple, symbol.n())
}

/// `deg K^q_{m,p}`, the degree of the top index `(p+1, ..., n; q)`.
pub fn quot_degree(m: usize, p: u32, q: u32) -> Result<DegreeCount, RecurrenceError> {
    if m == 0 || p == 0 {
        return Err(RecurrenceError::EmptyGrassmannian { m, p });
    }
    subvariety_degree(&SchubertSymbol::top(m, p, q)?, q)
}
