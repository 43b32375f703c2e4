use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),

    #[error("flow is infeasible: {0}")]
    InfeasibleFlow(String),

    #[error("network admits no feasible flow")]
    Infeasible,

    #[error("flow is not optimal for the given weights")]
    NotOptimal,

    #[error("operation requires {expected} objectives, network has {found}")]
    ObjectiveCount { expected: usize, found: usize },

    #[error("integer overflow: {0}")]
    Overflow(&'static str),

    #[error("instance too large for oracle: more than {cap} feasible flows")]
    OracleCapExceeded { cap: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
