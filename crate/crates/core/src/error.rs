use thiserror::Error;

/// Everything that can go wrong while building curves or computing invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(
        "order indeterminate on branch {branch}: series vanishes below t^{trunc}; \
         raise the truncation to at least {needed}"
    )]
    IndeterminateOrder { branch: usize, trunc: i64, needed: i64 },
    #[error("insufficient truncation for {context}: need coefficients below t^{needed}, have t^{have}")]
    Truncation { context: String, needed: i64, have: i64 },
    #[error("seed not liftable; supply finer seed or explicit parametrization ({0})")]
    NotLiftable(String),
    #[error("malformed curve: {0}")]
    MalformedCurve(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("fractional ideal contains no non-zero divisor")]
    NoNonZeroDivisor,
    #[error("non-isolated singularity: quotient did not stabilize up to degree {0}")]
    NonIsolated(u32),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("algorithm failure: {0}")]
    Algorithm(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidField(_)
            | Error::ShapeMismatch(_)
            | Error::MalformedCurve(_)
            | Error::InvalidInput(_)
            | Error::FieldMismatch => 2,
            Error::Invariant(_) => 4,
            _ => 3,
        }
    }

    pub(crate) fn truncation(context: impl Into<String>, needed: i64, have: i64) -> Self {
        Error::Truncation { context: context.into(), needed, have }
    }

    /// True for errors that a larger truncation order could cure.
    pub fn is_truncation(&self) -> bool {
        matches!(self, Error::Truncation { .. } | Error::IndeterminateOrder { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
