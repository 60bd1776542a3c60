use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed basis data (non-increasing wedge indices, zero variable index, ...).
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),

    /// An operator index outside its domain, e.g. `H[0]` or `P[0]`.
    #[error("index out of domain: {0}")]
    IndexDomain(String),

    /// An operator applied to a space on which it is not defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A locally finite sum failed to terminate within its iteration cap, or an
    /// admissibility condition was found violated while evaluating.
    #[error("inadmissible module: {0}")]
    Inadmissible(String),

    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
}
