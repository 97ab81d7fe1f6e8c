//! Index algebra for Plücker coordinates of Quot schemes.
//!
//! A [`CompositeIndex`] is a strictly increasing tuple `α_1 < ... < α_m` of
//! positive integers whose entries are pairwise distinct modulo `n = m + p`.
//! Indices whose span `α_m - α_1` is smaller than `n` label the Plücker
//! coordinates of the Quot scheme and the subvarieties `Z_α`; each of them
//! corresponds to exactly one [`SchubertSymbol`] `(i; d)`.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("index has no entries")]
    Empty,
    #[error("modulus n = {0} is too small (need n >= 2)")]
    ModulusTooSmall(u32),
    #[error("entries must be at least 1")]
    EntryBelowOne,
    #[error("entries must be strictly increasing")]
    NotIncreasing,
    #[error("entries {0} and {1} coincide modulo {2}")]
    ResidueClash(u32, u32, u32),
    #[error("indices use different moduli ({0} vs {1})")]
    ModulusMismatch(u32, u32),
    #[error("tuples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("index {0} spans a full period (alpha_m - alpha_1 >= {1})")]
    SpansPeriod(String, u32),
    #[error("column {column} lies outside 1..={n}")]
    ColumnOutOfRange { column: u32, n: u32 },
    #[error("column i_{position} = {column} exceeds p + {position} = {bound}")]
    ColumnAboveBox {
        position: usize,
        column: u32,
        bound: u32,
    },
    #[error("partition parts must be weakly decreasing")]
    NotPartition,
    #[error("cannot parse index entry {0:?}")]
    Parse(String),
}

/// Parses the canonical textual form `"a1,a2,...,am"`.
pub fn parse_entries(text: &str) -> Result<Vec<u32>, IndexError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<u32>()
                .map_err(|_| IndexError::Parse(part.to_string()))
        })
        .collect()
}

/// Componentwise comparison `i_l <= j_l` for all `l`.
pub fn leq_componentwise(i: &[u32], j: &[u32]) -> Result<bool, IndexError> {
    if i.len() != j.len() {
        return Err(IndexError::LengthMismatch(i.len(), j.len()));
    }
    Ok(i.iter().zip(j).all(|(a, b)| a <= b))
}

fn strictly_increasing(entries: &[u32]) -> bool {
    entries.windows(2).all(|w| w[0] < w[1])
}

/// An element of the index set with entries pairwise distinct modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeIndex {
    entries: Vec<u32>,
    n: u32,
}

impl CompositeIndex {
    pub fn new(entries: Vec<u32>, n: u32) -> Result<Self, IndexError> {
        if entries.is_empty() {
            return Err(IndexError::Empty);
        }
        if n < 2 {
            return Err(IndexError::ModulusTooSmall(n));
        }
        if entries[0] < 1 {
            return Err(IndexError::EntryBelowOne);
        }
        if !strictly_increasing(&entries) {
            return Err(IndexError::NotIncreasing);
        }
        for (a, b) in entries.iter().tuple_combinations() {
            if a % n == b % n {
                return Err(IndexError::ResidueClash(*a, *b, n));
            }
        }
        Ok(Self { entries, n })
    }

    /// The bottom element `(1, 2, ..., m)`.
    pub fn bottom(m: usize, n: u32) -> Result<Self, IndexError> {
        Self::new((1..=m as u32).collect(), n)
    }

    /// Builds an index that is known to satisfy every invariant.
    fn trusted(entries: Vec<u32>, n: u32) -> Self {
        debug_assert!(Self::new(entries.clone(), n).is_ok());
        Self { entries, n }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.n.saturating_sub(self.m() as u32)
    }

    pub fn is_bottom(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(l, &a)| a == l as u32 + 1)
    }

    /// Membership in `I(m,p)`: the span `α_m - α_1` is smaller than `n`.
    pub fn is_quot_index(&self) -> bool {
        self.entries[self.m() - 1] - self.entries[0] < self.n
    }

    fn require_quot_index(&self) -> Result<(), IndexError> {
        if self.is_quot_index() {
            Ok(())
        } else {
            Err(IndexError::SpansPeriod(self.to_string(), self.n))
        }
    }

    fn require_compatible(&self, other: &Self) -> Result<(), IndexError> {
        if self.n != other.n {
            return Err(IndexError::ModulusMismatch(self.n, other.n));
        }
        if self.m() != other.m() {
            return Err(IndexError::LengthMismatch(self.m(), other.m()));
        }
        Ok(())
    }

    /// Dimension `|α|` of the cell labelled by this index.
    ///
    /// `Σ (α_l - l) - Σ_{k<l} ⌊(α_l - α_k) / n⌋`. The correction term vanishes
    /// on `I(m,p)`.
    pub fn dimension(&self) -> i64 {
        let n = i64::from(self.n);
        let base: i64 = self
            .entries
            .iter()
            .enumerate()
            .map(|(l, &a)| i64::from(a) - (l as i64 + 1))
            .sum();
        let wraps: i64 = self
            .entries
            .iter()
            .tuple_combinations()
            .map(|(&lo, &hi)| (i64::from(hi) - i64::from(lo)).div_euclid(n))
            .sum();
        base - wraps
    }

    /// The sorted merge of the progressions `α_j + k n`, `k >= 0`.
    pub fn sequence(&self) -> impl Iterator<Item = u64> + '_ {
        let n = u64::from(self.n);
        self.entries
            .iter()
            .map(move |&a| (0u64..).map(move |k| u64::from(a) + k * n))
            .kmerge()
    }

    /// Number of sequence terms compared by [`leq_sequence`](Self::leq_sequence).
    ///
    /// Past the largest generator both sequences satisfy `f_{l+m} = f_l + n`,
    /// so one additional period decides every later comparison.
    pub fn sequence_prefix_len(&self, other: &Self) -> usize {
        let top = self.entries[self.m() - 1].max(other.entries[other.m() - 1]);
        self.m() * ((top / self.n) as usize + 2)
    }

    /// The partial order defined through the merged sequences `f(α)`.
    pub fn leq_sequence(&self, other: &Self) -> Result<bool, IndexError> {
        self.require_compatible(other)?;
        let len = self.sequence_prefix_len(other);
        Ok(self
            .sequence()
            .zip(other.sequence())
            .take(len)
            .all(|(a, b)| a <= b))
    }

    /// Componentwise order; on `I(m,p)` this coincides with the sequence order.
    pub fn leq(&self, other: &Self) -> Result<bool, IndexError> {
        self.require_compatible(other)?;
        leq_componentwise(&self.entries, &other.entries)
    }

    /// Whether `self` covers `other` in `I(m,p)`, decided on Schubert symbols:
    /// either the degrees agree and one column drops by one, or the degree
    /// drops by one and `(1, i_2, ..., i_m)` becomes `(i_2, ..., i_m, n)`.
    pub fn covers(&self, other: &Self) -> Result<bool, IndexError> {
        self.require_compatible(other)?;
        if !self.is_quot_index() || !other.is_quot_index() {
            return Ok(false);
        }
        let upper = self.to_schubert()?;
        let lower = other.to_schubert()?;
        let (i, j) = (upper.columns(), lower.columns());
        if upper.offset() == lower.offset() {
            let mut diffs = i.iter().zip(j).filter(|(a, b)| a != b);
            return Ok(matches!(
                (diffs.next(), diffs.next()),
                (Some((a, b)), None) if *a == *b + 1
            ));
        }
        if upper.offset() == lower.offset() + 1 && i[0] == 1 {
            let n = self.n;
            let shifted = i[1..].iter().copied().chain(std::iter::once(n));
            return Ok(shifted.eq(j.iter().copied()));
        }
        Ok(false)
    }

    /// Elements of `I(m,p)` covered by `self`: single-entry decrements that
    /// stay inside `I(m,p)`, in lexicographic order.
    pub fn lower_covers(&self) -> Vec<Self> {
        let m = self.m();
        (0..m)
            .rev()
            .filter_map(|l| {
                let a = self.entries[l];
                if a <= 1 || (l > 0 && self.entries[l - 1] == a - 1) {
                    return None;
                }
                if l == 0 && self.entries[m - 1] - (a - 1) >= self.n {
                    return None;
                }
                let mut entries = self.entries.clone();
                entries[l] -= 1;
                Some(Self::trusted(entries, self.n))
            })
            .sorted()
            .collect()
    }

    /// Elements of `I(m,p)` covering `self` that stay componentwise below
    /// `bound`, in lexicographic order.
    pub fn upper_covers_within(&self, bound: &Self) -> Vec<Self> {
        let m = self.m();
        (0..m)
            .filter_map(|l| {
                let a = self.entries[l] + 1;
                if a > bound.entries[l] || (l + 1 < m && self.entries[l + 1] == a) {
                    return None;
                }
                if l == m - 1 && a - self.entries[0] >= self.n {
                    return None;
                }
                let mut entries = self.entries.clone();
                entries[l] = a;
                Some(Self::trusted(entries, self.n))
            })
            .sorted()
            .collect()
    }

    /// All `β ∈ I(m,p)` with `β <= self` componentwise, in lexicographic order.
    pub fn lower_set(&self) -> Result<std::vec::IntoIter<Self>, IndexError> {
        self.require_quot_index()?;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.m());
        self.collect_lower(&mut current, &mut out);
        Ok(out.into_iter())
    }

    fn collect_lower(&self, current: &mut Vec<u32>, out: &mut Vec<Self>) {
        let l = current.len();
        if l == self.m() {
            out.push(Self::trusted(current.clone(), self.n));
            return;
        }
        let (lo, hi) = match current.first() {
            None => (1, self.entries[0]),
            Some(&first) => (current[l - 1] + 1, self.entries[l].min(first + self.n - 1)),
        };
        for value in lo..=hi {
            current.push(value);
            self.collect_lower(current, out);
            current.pop();
        }
    }

    /// Recovers `(i; d)` with `α = (i; d)`.
    pub fn to_schubert(&self) -> Result<SchubertSymbol, IndexError> {
        self.require_quot_index()?;
        let n = self.n;
        let mut offset = 0;
        let columns: Vec<u32> = self
            .entries
            .iter()
            .map(|&a| {
                let residue = (a - 1) % n + 1;
                offset += (a - residue) / n;
                residue
            })
            .sorted()
            .collect();
        SchubertSymbol::new(columns, offset, n)
    }
}

impl fmt::Display for CompositeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

/// A Grassmannian column set `i` together with a degree offset `d`, naming
/// the subvariety `Z_i^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchubertSymbol {
    columns: Vec<u32>,
    offset: u32,
    n: u32,
}

impl SchubertSymbol {
    pub fn new(columns: Vec<u32>, offset: u32, n: u32) -> Result<Self, IndexError> {
        if columns.is_empty() {
            return Err(IndexError::Empty);
        }
        if n < 2 {
            return Err(IndexError::ModulusTooSmall(n));
        }
        if !strictly_increasing(&columns) {
            return Err(IndexError::NotIncreasing);
        }
        if let Some(&column) = columns.iter().find(|&&c| c < 1 || c > n) {
            return Err(IndexError::ColumnOutOfRange { column, n });
        }
        Ok(Self { columns, offset, n })
    }

    /// The top symbol `(p+1, ..., n; d)`.
    pub fn top(m: usize, p: u32, offset: u32) -> Result<Self, IndexError> {
        let columns = (1..=m as u32).map(|l| p + l).collect();
        Self::new(columns, offset, m as u32 + p)
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn p(&self) -> u32 {
        self.n.saturating_sub(self.m() as u32)
    }

    /// `|i| = Σ (i_l - l)`.
    pub fn column_weight(&self) -> u64 {
        self.columns
            .iter()
            .enumerate()
            .map(|(l, &c)| u64::from(c) - (l as u64 + 1))
            .sum()
    }

    /// `dim Z_i^d = |i| + n d`.
    pub fn dimension(&self) -> u64 {
        self.column_weight() + u64::from(self.n) * u64::from(self.offset)
    }

    /// The composite index `α = (i; d)`: with `d = k m + r`, the last `m - r`
    /// columns are shifted by `k n` and the first `r` by `(k + 1) n`.
    pub fn to_composite(&self) -> CompositeIndex {
        let m = self.m();
        let (k, r) = (self.offset as usize / m, self.offset as usize % m);
        let n = self.n;
        let entries = (0..m)
            .map(|l| {
                if l < m - r {
                    k as u32 * n + self.columns[l + r]
                } else {
                    (k as u32 + 1) * n + self.columns[l + r - m]
                }
            })
            .collect();
        CompositeIndex::trusted(entries, n)
    }

    /// The partition `μ = (p + 1 - i_1, ..., p + m - i_m)`.
    pub fn partition(&self) -> Result<Partition, IndexError> {
        Partition::from_columns(&self.columns, self.p())
    }
}

impl fmt::Display for SchubertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.columns.iter().join(","), self.offset)
    }
}

/// A weakly decreasing tuple of nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, IndexError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(IndexError::NotPartition);
        }
        Ok(Self { parts })
    }

    /// The rectangle `(p, ..., p)` with `m` rows.
    pub fn rectangle(m: usize, p: u32) -> Self {
        Self { parts: vec![p; m] }
    }

    pub fn from_columns(columns: &[u32], p: u32) -> Result<Self, IndexError> {
        let parts = columns
            .iter()
            .enumerate()
            .map(|(l, &column)| {
                let bound = p + l as u32 + 1;
                bound.checked_sub(column).ok_or(IndexError::ColumnAboveBox {
                    position: l + 1,
                    column,
                    bound,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|&x| x == 0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&x| u64::from(x)).sum()
    }

    /// Every partition with `m` parts (trailing zeros allowed) of the given size.
    pub fn all_of_size(m: usize, size: u32) -> Vec<Self> {
        fn fill(
            rest: u32,
            cap: u32,
            slots: usize,
            current: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if slots == 0 {
                if rest == 0 {
                    out.push(Partition {
                        parts: current.clone(),
                    });
                }
                return;
            }
            for part in (0..=cap.min(rest)).rev() {
                current.push(part);
                fill(rest - part, part, slots - 1, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        fill(size, size, m, &mut Vec::with_capacity(m), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// Every element of `I(m,p)` whose dimension is at most `max_dimension`.
pub fn quot_indices_up_to(m: usize, p: u32, max_dimension: u64) -> Vec<CompositeIndex> {
    let n = m as u32 + p;
    let mut out = Vec::new();
    for offset in 0..=(max_dimension / u64::from(n)) as u32 {
        for columns in (1..=n).combinations(m) {
            let symbol = SchubertSymbol::new(columns, offset, n).expect("valid columns");
            if symbol.dimension() <= max_dimension {
                out.push(symbol.to_composite());
            }
        }
    }
    out.sort_by_key(|alpha| (alpha.dimension(), alpha.clone()));
    out
}
