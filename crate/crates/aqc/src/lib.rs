//! Counting permutations by their adjacent q-cycles.
//!
//! An adjacent q-cycle in a permutation of {1, 2, ..., n} is a cycle of the
//! form (a, a+1, ..., a+q-1): q consecutive integers, cycled in increasing
//! order. For q = 1 these are fixed points, and the permutations avoiding
//! them are the classical derangements.
//!
//! The crate computes the exact distribution of adjacent q-cycles several
//! independent ways and cross-checks the routes against each other:
//!
//! - [`counts`]: closed-form alternating sums, recurrences on rows and
//!   columns of the count triangle, counts for several tracked cycle
//!   lengths at once, and two-sided bounds.
//! - [`oracle`]: brute-force enumeration of S_n with direct cycle
//!   inspection; the ground truth everything else is checked against.
//! - [`genfun`]: exact rational power series and verification of the
//!   ordinary and exponential generating-function differential equations
//!   satisfied by the free counts.
//! - [`mpoly`] and [`permanent`]: sparse integer polynomials in marked
//!   cycle variables, and polynomial permanents of marked matrices whose
//!   terms classify permutations by the adjacent cycles they contain.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod counts;
pub mod genfun;
pub mod mpoly;
pub mod oracle;
pub mod permanent;

/// Exact nonnegative integer used for all counts.
pub type Nat = num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cycle length must be at least {min}, got {got}")]
    CycleLengthTooSmall { min: usize, got: usize },

    #[error("invalid cycle-length set: {0}")]
    InvalidLengthSet(String),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("n = {n} exceeds the cap of {cap} for {what}; pass the cap explicitly to go larger")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn require_cycle_length(min: usize, got: usize) -> Result<()> {
    if got < min {
        return Err(Error::CycleLengthTooSmall { min, got });
    }
    Ok(())
}

fn require_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what, n, cap });
    }
    Ok(())
}
