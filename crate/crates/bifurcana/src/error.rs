//! Crate-wide error type.
//!
//! Variants are grouped by how a front end should report them: everything
//! except `Internal` is a statement about the *inputs* (inadmissible
//! parameters, a pole, a violated precondition) and carries the offending
//! quantity by name.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on arguments was violated (wrong variable, zero
    /// polynomial, malformed interval, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Structurally degenerate input (identically zero leading coefficient,
    /// both quadratic coefficients zero, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Evaluation hit a pole; the message names the vanishing denominator.
    #[error("singular evaluation: denominator {0} vanishes")]
    SingularEvaluation(String),

    /// A transform failed its validity requirements.
    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    /// The requested analysis does not apply at the given point; the
    /// message names the violated condition.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Anything that indicates a bug or an environmental failure rather
    /// than bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True when the error describes inadmissible *input* rather than an
    /// internal failure. Front ends map this to the domain-violation exit
    /// code.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
