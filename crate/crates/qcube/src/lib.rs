//! Distance colorings of the q-ary n-cube.
//!
//! The cube `Q_n(q)` has vertex set `GF(q)^n` with edges between vectors at
//! Hamming distance 1. Two coloring problems live on it: color vertices so
//! that any two at distance at most `d` differ, or so that any two at
//! distance exactly `d` differ. This crate builds finite fields, linear
//! codes whose cosets realize such colorings, closed-form lower and upper
//! bounds on the palette size, and small exact solvers that certify the
//! constructions at desk scale.

pub mod bounds;
pub mod codes;
pub mod coloring;
pub mod cube;
pub mod exact;
pub mod field;
mod util;

pub use coloring::{Coloring, ProblemSpec, VerifyOutcome, Violation};
pub use cube::Mode;
pub use field::{Elem, Field};

/// Unified error type for construction, verification, and search routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrime(u64),
    #[error("q = {0} is not a prime power")]
    NonPrimePower(u64),
    #[error("field order {0} exceeds the cap 2^16")]
    FieldTooLarge(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumerating {count} codewords exceeds the cap 2^{cap_log2}")]
    EnumerationTooLarge { count: u64, cap_log2: u32 },
    #[error("vertex space q^n = {q}^{n} exceeds the cap 2^{cap_log2}")]
    SpaceTooLarge { q: u64, n: usize, cap_log2: u32 },
    #[error("verification needs {needed} pair checks but the budget is {budget}")]
    VerifyBudget { needed: u64, budget: u64 },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("bad coloring file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidArgument(msg.into())
    }
}
