use thiserror::Error;

use crate::pair::PairVerdict;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    /// A flag member `k` where the exponential sum does not vanish.
    #[error("hypothesis violated: exponential sum is nonzero at k = {0}")]
    HypothesisViolation(i64),

    /// A proven implication failed on concrete data. Always a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("not a spectral pair (fails at k = {k:?})", k = .0.failing_k)]
    NotASpectralPair(Box<PairVerdict>),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedMode(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
