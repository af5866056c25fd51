//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input parameter lies outside the mathematical domain of the
    /// operation (negative radius, chord longer than a diameter, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are individually valid but violate a precondition of the
    /// operation (point not on the stated sphere or circle, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The configuration collapses to a degenerate object for which the
    /// requested output is not defined.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A root or transition the algorithm relies on could not be bracketed.
    #[error("bracketing failed: {0}")]
    Bracket(String),

    /// An internal identity that should hold to rounding error did not;
    /// indicates a bug rather than bad input.
    #[error("internal identity violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
