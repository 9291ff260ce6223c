use thiserror::Error;

/// Errors raised by the arithmetic, search and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The modulus is outside what the operation supports (even, too small, overflowing).
    #[error("unsupported modulus {n}: {reason}")]
    UnsupportedModulus { n: u64, reason: &'static str },

    /// A value that has to be a unit modulo p is divisible by p.
    #[error("{value} is not coprime to {p}")]
    NotCoprime { value: u64, p: u64 },

    #[error("operands live in different rings: {left} vs {right}")]
    MismatchedRings { left: String, right: String },

    #[error("moduli do not match: expected {expected}, got {found}")]
    ModulusMismatch { expected: u64, found: u64 },

    /// A search space exceeds its configured cap.
    #[error("instance too large: {what} is {size}, cap is {cap}")]
    InstanceTooLarge { what: &'static str, size: u64, cap: u64 },

    #[error("expected a pure quaternion (zero scalar part)")]
    NotPure,

    /// A construction was invoked outside its hypotheses.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// No representation of the requested shape exists.
    #[error("no representation: {0}")]
    NoRepresentation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
