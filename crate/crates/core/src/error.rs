use thiserror::Error;

use crate::bounds::BoundId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by validation, bound evaluation, generators and oracles.
///
/// Indices carried by variants are 1-based, matching the item numbering
/// used throughout the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty sequence: at least one probability is required")]
    EmptySequence,
    #[error("probability at index {index} is out of range [0, 1]: {value}")]
    OutOfRange { index: usize, value: f64 },
    #[error("probability at index {index} is not a finite number")]
    NotANumber { index: usize },
    #[error("value at index {index} is negative: {value}")]
    NegativeInput { index: usize, value: f64 },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("sequence length {n} exceeds the enumeration cap of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("monte carlo needs at least one trial")]
    ZeroTrials,
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("internal bound violation: {bound} = {bound_value} against v_n = {v_n}")]
    InternalBoundViolation {
        bound: BoundId,
        bound_value: f64,
        v_n: f64,
    },
}
