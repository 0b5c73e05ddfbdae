//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// `n` would materialize more dense points than the configured cap allows.
    #[error("variable count {n} exceeds the dense capacity {cap}")]
    Capacity { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("expected {expected} values, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("variable counts differ: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// A parity relation between a degree and a level was violated.
    #[error("parity violation: {0}")]
    Parity(String),

    #[error("input degree {degree} exceeds the declared bound {bound}")]
    DegreeContract { degree: usize, bound: usize },

    #[error("sample source exhausted after {drawn} draws")]
    Exhausted { drawn: usize },

    #[error("gave up after {tries} attempts")]
    MaxTries { tries: usize },

    #[error("computed sample budget {needed} is too large to draw; pass an explicit sample count")]
    SampleBudget { needed: u128 },

    #[error("the zero function has no normalized ratio")]
    ZeroFunction,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
