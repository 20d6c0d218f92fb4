//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two sign vectors of different lengths were combined.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// An element label is not part of the ground set.
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    /// A sign vector was required to be a covector of the system but is not.
    #[error("sign vector {0} is not a covector of the system")]
    NotACovector(String),

    /// An operation would produce an empty ground set.
    #[error("operation would leave the ground set empty")]
    EmptyGroundSet,

    /// An operation would produce an empty set of covectors.
    #[error("{0}")]
    EmptyResult(String),

    /// A stated precondition does not hold for the input system.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An enumeration guard refused the requested computation.
    #[error("enumeration guard exceeded: {what} = {value} > limit {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal cross-check failed; indicates a bug, not bad input.
    #[error("internal consistency error: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
