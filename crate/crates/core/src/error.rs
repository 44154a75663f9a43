use thiserror::Error;

/// Hard errors: contract violations the caller must fix.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: instance size {actual} exceeds the exact-search bound {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("malformed cycle: {0}")]
    MalformedCycle(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error(transparent)]
    Lift(#[from] LiftError),

    #[error("internal error (this is a bug): {0}")]
    Internal(String),
}

/// Precondition failures of the cycle lifting construction, naming the exact
/// window that is missing from the host.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    /// Window `i` of rim slot `s` is not in the link of rim vertex `s`
    /// (both 1-based).
    #[error("lift condition fails at segment {s}, window {i}")]
    Window { s: usize, i: usize },

    /// The leading window of segment `s` is not in the link of the previous
    /// rim vertex (1-based, wrapping).
    #[error("lift wrap-around condition fails at segment {s}")]
    Wrap { s: usize },

    #[error("malformed lift input: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A recoverable pipeline failure: the stage could not meet its density or
/// search target and the caller should fall back, never silently degrade.
#[derive(Debug, Clone)]
pub struct SoftFailure {
    pub stage: &'static str,
    pub detail: String,
}

impl SoftFailure {
    pub fn new(stage: &'static str, detail: impl Into<String>) -> Self {
        SoftFailure {
            stage,
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for SoftFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "soft failure in stage `{}`: {}", self.stage, self.detail)
    }
}

pub type Soft<T> = std::result::Result<T, SoftFailure>;
