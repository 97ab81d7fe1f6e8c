//! Degrees of `Z_α` as counts of maximal chains in the lower set `I_α`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::indices::{CompositeIndex, IndexError};
use crate::parallel::{map_ordered, Execution};

/// Largest dimension accepted by [`degree_bruteforce`] unless overridden.
pub const BRUTE_FORCE_MAX_DIMENSION: i64 = 10;

/// Default number of chains materialised by [`enumerate_chains`].
pub const DEFAULT_CHAIN_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("index {0} is not in I(m,p)")]
    NotQuotIndex(String),
    #[error("counter works modulo {counter} but index uses modulo {index}")]
    ModulusMismatch { counter: u32, index: u32 },
    #[error("dimension {dimension} exceeds the brute-force bound {bound}")]
    DimensionAboveBound { dimension: i64, bound: i64 },
}

/// An exact, arbitrary-precision degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DegreeCount(BigUint);

impl DegreeCount {
    pub fn new(value: BigUint) -> Self {
        Self(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }
}

impl From<u64> for DegreeCount {
    fn from(value: u64) -> Self {
        Self(BigUint::from(value))
    }
}

impl PartialEq<u64> for DegreeCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for DegreeCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

// Decimal strings keep arbitrary-size values intact in JSON.
impl Serialize for DegreeCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for DegreeCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse::<BigUint>()
            .map(Self)
            .map_err(serde::de::Error::custom)
    }
}

/// A saturated chain from the bottom index up to `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain(Vec<CompositeIndex>);

impl Chain {
    pub fn steps(&self) -> &[CompositeIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.0.iter().map(|alpha| format!("({alpha})")).join(" -> ");
        f.write_str(&text)
    }
}

/// Memoised chain counter for a fixed modulus `n`.
///
/// The table is filled level by level in increasing dimension; every level
/// only reads the previous ones, so a level is evaluated as one data-parallel
/// batch.
#[derive(Debug, Clone)]
pub struct ChainCounter {
    n: u32,
    execution: Execution,
    memo: HashMap<Vec<u32>, BigUint>,
}

impl ChainCounter {
    pub fn new(n: u32) -> Self {
        Self::with_execution(n, Execution::default())
    }

    pub fn with_execution(n: u32, execution: Execution) -> Self {
        Self {
            n,
            execution,
            memo: HashMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Replaces a memo entry. Used to check that verification sweeps notice
    /// corrupted tables.
    #[doc(hidden)]
    pub fn overwrite_entry(&mut self, alpha: &CompositeIndex, value: BigUint) {
        self.memo.insert(alpha.entries().to_vec(), value);
    }

    fn check(&self, alpha: &CompositeIndex) -> Result<(), DegreeError> {
        if alpha.n() != self.n {
            return Err(DegreeError::ModulusMismatch {
                counter: self.n,
                index: alpha.n(),
            });
        }
        if !alpha.is_quot_index() {
            return Err(DegreeError::NotQuotIndex(alpha.to_string()));
        }
        Ok(())
    }

    /// Number of maximal chains of `I_α`.
    pub fn degree(&mut self, alpha: &CompositeIndex) -> Result<DegreeCount, DegreeError> {
        self.check(alpha)?;
        if let Some(value) = self.memo.get(alpha.entries()) {
            return Ok(DegreeCount(value.clone()));
        }
        let mut levels: BTreeMap<i64, Vec<CompositeIndex>> = BTreeMap::new();
        for beta in alpha.lower_set()? {
            if !self.memo.contains_key(beta.entries()) {
                levels.entry(beta.dimension()).or_default().push(beta);
            }
        }
        for level in levels.into_values() {
            let memo = &self.memo;
            let values = map_ordered(self.execution, &level, |beta| {
                if beta.is_bottom() {
                    return BigUint::one();
                }
                beta.lower_covers()
                    .iter()
                    .map(|gamma| &memo[gamma.entries()])
                    .sum()
            });
            for (beta, value) in level.into_iter().zip(values) {
                self.memo.insert(beta.entries().to_vec(), value);
            }
        }
        Ok(DegreeCount(self.memo[alpha.entries()].clone()))
    }
}

/// Degree of `Z_α` with a fresh memo table.
pub fn degree_chain(alpha: &CompositeIndex) -> Result<DegreeCount, DegreeError> {
    ChainCounter::new(alpha.n()).degree(alpha)
}

/// Explicit chains, possibly truncated, together with the true total.
#[derive(Debug, Clone)]
pub struct ChainListing {
    pub chains: Vec<Chain>,
    pub total: DegreeCount,
    pub truncated: bool,
}

/// Lists maximal chains of `I_α` from the bottom up, in lexicographic order,
/// keeping at most `cap` of them.
pub fn enumerate_chains(alpha: &CompositeIndex, cap: usize) -> Result<ChainListing, DegreeError> {
    let total = degree_chain(alpha)?;
    let bottom = CompositeIndex::bottom(alpha.m(), alpha.n())?;
    let mut chains = Vec::new();
    let mut path = vec![bottom];
    let complete = walk_up(alpha, &mut path, &mut chains, cap);
    Ok(ChainListing {
        chains,
        truncated: !complete,
        total,
    })
}

/// Returns false once the cap stops the walk early.
fn walk_up(
    top: &CompositeIndex,
    path: &mut Vec<CompositeIndex>,
    out: &mut Vec<Chain>,
    cap: usize,
) -> bool {
    let current = path.last().expect("path starts at the bottom");
    if current == top {
        if out.len() == cap {
            return false;
        }
        out.push(Chain(path.clone()));
        return true;
    }
    for next in current.upper_covers_within(top) {
        path.push(next);
        let keep_going = walk_up(top, path, out, cap);
        path.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Chain count by depth-first search over a Hasse diagram built directly from
/// the componentwise order, without memoisation.
pub fn degree_bruteforce(alpha: &CompositeIndex) -> Result<DegreeCount, DegreeError> {
    degree_bruteforce_bounded(alpha, BRUTE_FORCE_MAX_DIMENSION)
}

pub fn degree_bruteforce_bounded(
    alpha: &CompositeIndex,
    max_dimension: i64,
) -> Result<DegreeCount, DegreeError> {
    if !alpha.is_quot_index() {
        return Err(DegreeError::NotQuotIndex(alpha.to_string()));
    }
    let dimension = alpha.dimension();
    if dimension > max_dimension {
        return Err(DegreeError::DimensionAboveBound {
            dimension,
            bound: max_dimension,
        });
    }
    let elements: Vec<CompositeIndex> = alpha.lower_set()?.collect();
    let below = |a: &CompositeIndex, b: &CompositeIndex| a != b && a.leq(b).unwrap_or(false);
    let covered: Vec<Vec<usize>> = elements
        .iter()
        .map(|upper| {
            (0..elements.len())
                .filter(|&j| {
                    let lower = &elements[j];
                    below(lower, upper)
                        && !elements
                            .iter()
                            .any(|mid| below(lower, mid) && below(mid, upper))
                })
                .collect()
        })
        .collect();
    let top = elements
        .iter()
        .position(|beta| beta == alpha)
        .expect("alpha lies in its own lower set");
    Ok(DegreeCount(count_paths(&elements, &covered, top)))
}

fn count_paths(elements: &[CompositeIndex], covered: &[Vec<usize>], at: usize) -> BigUint {
    if elements[at].is_bottom() {
        return BigUint::one();
    }
    covered[at].iter().fold(BigUint::zero(), |acc, &below| {
        acc + count_paths(elements, covered, below)
    })
}
