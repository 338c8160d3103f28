use thiserror::Error;

/// Errors produced by the exact-arithmetic kernels and verification engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the index set is empty: {0}")]
    EmptySet(String),

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("matrix is not symmetric at entry ({0},{1})")]
    Asymmetric(usize, usize),

    #[error("exact zero pivot at shift {shift}; retry with a perturbed shift")]
    ShiftCollision { shift: String },

    #[error("bisection did not reach the requested width within {0} iterations")]
    NoConvergence(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid line configuration: {0}")]
    InvalidConfiguration(String),

    #[error("enumeration budget exceeded: {subsets} subsets required ({0})", .what)]
    EnumerationBudget { what: String, subsets: u128 },

    #[error("degree {0} is outside the validated range (max {1})")]
    OutOfValidatedRange(u32, u32),

    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("eigensolver did not converge: {0}")]
    EigenNoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
