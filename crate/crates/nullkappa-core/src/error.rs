use alloc::string::String;
use core::fmt;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the documented domain of an operation.
    Domain(String),
    /// A domain specification violates its construction invariants.
    InvalidDomain(String),
    /// The operation is not defined for this kind of domain.
    Unsupported(String),
    /// An iterative solve failed to converge; carries a diagnostic residual.
    NonConvergence { what: String, residual: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidDomain(msg) => write!(f, "invalid domain: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported domain: {msg}"),
            Error::NonConvergence { what, residual } => {
                write!(f, "{what} failed to converge (residual {residual:.3e})")
            }
        }
    }
}

impl core::error::Error for Error {}
