use thiserror::Error;

use crate::spokes::Violation;

/// Errors produced by the library.
///
/// [`Error::is_resource`] separates budget/limit failures from plain
/// validation failures; the CLI maps them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for block length {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("block length {n} too small (need at least {min})")]
    TooSmall { n: usize, min: usize },

    #[error("not a bijection: entry at index {index} (value {value}) is {reason}")]
    NotBijection {
        index: usize,
        value: usize,
        reason: &'static str,
    },

    #[error("cycle length {0} must be even and at least 2")]
    BadCycleLength(usize),

    #[error("invalid cubic graph at vertex {vertex}: {reason}")]
    InvalidGraph { vertex: usize, reason: &'static str },

    #[error("vertex count {0} must be even")]
    OddOrder(usize),

    #[error("invalid spoke vector: {0}")]
    InvalidSpokes(Violation),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "enumeration of N={n}, s={s} exceeds budget: search-space estimate {estimate} > {budget} \
         (closed-form count predicts {predicted} vectors)"
    )]
    BudgetExceeded {
        n: usize,
        s: usize,
        estimate: u128,
        budget: u128,
        predicted: String,
    },

    #[error("graph with {vertices} vertices exceeds the brute-force oracle limit of {limit}")]
    OracleLimit { vertices: usize, limit: usize },

    #[error("S-random construction with spread {spread} failed after {attempts} attempts; try a smaller spread")]
    SpreadConstruction { spread: usize, attempts: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for budget and size-limit failures.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::OracleLimit { .. } | Error::SpreadConstruction { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
