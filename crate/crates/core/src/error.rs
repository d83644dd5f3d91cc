use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("set has gcd {gcd} after translation (strict normalization rejects it)")]
    NotCoprime { gcd: u64 },

    #[error("cannot parse set literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("universe of {requested} exceeds the configured cap of {cap}")]
    Capacity { requested: u64, cap: u64 },

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("{d} does not divide {l}")]
    NotDivisible { l: u64, d: u64 },

    #[error("degenerate family: d = {d} must satisfy 1 < d < l = {l}")]
    DegenerateFamily { l: u64, d: u64 },

    #[error("family parameters violate {0}")]
    ConstraintViolation(&'static str),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    /// A verified statement failed. This always indicates a bug in the
    /// computation, and carries the counterexample.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("inconsistent classification: {0}")]
    Consistency(String),

    #[error("methods disagree: {0}")]
    Mismatch(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this error: 1 for violations, 2 for usage or
    /// input problems.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::TheoremViolation(_) | Error::Consistency(_) | Error::Mismatch(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
