use thiserror::Error;

/// Errors raised by the synchronization library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("measurement basis violates contract: {0}")]
    ContractViolation(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("state is not an eigenstate of the total generator (eigenvalue spread {spread:e})")]
    NotInvariantState { spread: f64 },

    #[error("cost function is not admissible: c_{q} = {value} > 0")]
    NonAdmissibleCost { q: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
