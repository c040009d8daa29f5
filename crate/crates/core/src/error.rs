use thiserror::Error;

/// Errors produced by the arithmetic, search and record layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input {value} out of range: {reason}")]
    InputOutOfRange { value: u64, reason: &'static str },

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("n = {n} has {divisors} divisors, budget is {budget}")]
    BudgetExceeded { n: u64, divisors: usize, budget: usize },

    #[error("n = {0} is not squarefree")]
    NotSquarefree(u64),

    #[error("n = {n} is not of the form {expected}")]
    OutOfShape { n: u64, expected: &'static str },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("measure does not fit in 64 bits")]
    MeasureOverflow,

    #[error("closed form gives {formula} for n = {n} but exhaustive search gives {search}")]
    FormulaMismatch { n: u64, formula: u64, search: u64 },

    #[error("line {line}: field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
