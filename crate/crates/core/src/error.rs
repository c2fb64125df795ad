use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at u = {at}")]
    Pole { at: Rational },
    #[error("rational function has a pole at 0 and no power-series expansion")]
    NotPowerSeries,
    #[error("partition size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid partition `{0}`")]
    InvalidPartition(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("descriptor error at line {line}, column {column}: {message}")]
    Descriptor {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("eigenvalue `{0}` uses q but no field size was given")]
    UnresolvedFieldSize(String),
    #[error("search budget exceeded: {required} candidates needed, budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
