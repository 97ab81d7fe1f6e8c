//! Exact degrees of Quot schemes `K^q_{m,p}` of maps from the projective
//! line into `Grass(m, m+p)`, and of their Schubert-type subvarieties `Z_α`.
//!
//! Every degree is available through three independent routes:
//!
//! * [`chain`] counts maximal chains in the lower set of an index,
//! * [`recurrence`] solves the partial recurrence with its side conditions,
//! * [`vafa`] evaluates the fixed-point sum over critical points of the
//!   Landau–Ginzburg potential.
//!
//! [`indices`] holds the shared index algebra.

pub mod chain;
pub mod indices;
pub mod parallel;
pub mod recurrence;
pub mod vafa;

pub use chain::{
    degree_bruteforce, degree_chain, enumerate_chains, Chain, ChainCounter, ChainListing,
    DegreeCount, DegreeError,
};
pub use indices::{CompositeIndex, IndexError, Partition, SchubertSymbol};
pub use parallel::Execution;
pub use recurrence::{degree_recurrence, quot_degree, subvariety_degree, RecurrenceError};
pub use vafa::{
    vi_correlator, vi_degree, CorrelatorSpec, NumericConfig, NumericError, NumericResult,
};
