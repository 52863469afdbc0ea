//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by construction and verification routines.
///
/// Internal-consistency failures (`Internal`) signal a violated theorem or a
/// bug, never bad user input; they carry a minimal counterexample description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// (series, rank) pair outside the supported range.
    InvalidCartanType(String),
    /// Vector or operator shapes do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// A weight that must be dominant integral is not.
    NotDominant(String),
    /// Highest-weight stripping produced a negative multiplicity.
    NotACharacter(String),
    /// The supplied operator family fails the representation check.
    NotARepresentation(String),
    /// A slice exceeds the configured size guard.
    SliceTooLarge { description: String, estimate: u64, budget: u64 },
    /// A subspace that must be stable under the action is not.
    NotStable(String),
    /// Violated internal invariant; carries a counterexample dump.
    Internal(String),
    /// Malformed structure-constant cache file.
    BadCacheFile(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCartanType(s) => write!(f, "invalid Cartan type: {s}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotDominant(s) => write!(f, "weight is not dominant integral: {s}"),
            Error::NotACharacter(s) => write!(f, "input is not a character: {s}"),
            Error::NotARepresentation(s) => write!(f, "operator family is not a representation: {s}"),
            Error::SliceTooLarge { description, estimate, budget } => write!(
                f,
                "slice too large for this pathway: {description} (estimated work {estimate} > budget {budget}); \
                 rerun with --force to override"
            ),
            Error::NotStable(s) => write!(f, "subspace is not stable under the action: {s}"),
            Error::Internal(s) => write!(f, "internal consistency failure: {s}"),
            Error::BadCacheFile(s) => write!(f, "bad structure-constant cache file: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
