use std::fmt;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Shapes do not line up (non-square determinant, wrong vector length, ...).
    Dimension(String),
    /// An input that must carry geometric content is degenerate (zero vector,
    /// dependent spanning set, all minors vanish).
    Degenerate(String),
    /// The arrangement fails the genericity predicate required by an operation.
    NonGeneric(String),
    /// Malformed arrangement data: zero normal, n <= k, duplicate labels.
    InvalidArrangement(String),
    /// A label not present in the arrangement.
    UnknownLabel(i64),
    /// Scalars from incompatible fields were mixed (different quadratic d).
    FieldMismatch(String),
    /// A construction parameter outside its supported range.
    UnsupportedParameter(String),
    /// A seeded generator exhausted its retry budget.
    RetryCapExceeded { attempts: u32, last_failure: String },
    /// An operation was invoked outside its stated precondition.
    ContractViolation(String),
    /// File or text parsing failed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(msg) => write!(f, "dimension error: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
            Error::NonGeneric(msg) => write!(f, "arrangement is not generic: {msg}"),
            Error::InvalidArrangement(msg) => write!(f, "invalid arrangement: {msg}"),
            Error::UnknownLabel(l) => write!(f, "unknown hyperplane label {l}"),
            Error::FieldMismatch(msg) => write!(f, "field mismatch: {msg}"),
            Error::UnsupportedParameter(msg) => write!(f, "unsupported parameter: {msg}"),
            Error::RetryCapExceeded {
                attempts,
                last_failure,
            } => write!(
                f,
                "retry cap exceeded after {attempts} attempts; last failure: {last_failure}"
            ),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
