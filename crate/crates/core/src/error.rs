use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),

    /// A point identifier that the space does not contain.
    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    /// Two values that must live on the same space do not.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// An exhaustive enumeration would exceed the configured cap.
    #[error("enumeration needs {needed} candidates, cap is {cap}")]
    EnumerationCap { needed: u128, cap: u64 },

    /// A caller-side precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A hand-built object does not satisfy the laws it claims to.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// A rational literal could not be parsed.
    #[error("cannot parse rational `{0}`: expected \"p/q\" in lowest terms with q > 0")]
    Rational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
