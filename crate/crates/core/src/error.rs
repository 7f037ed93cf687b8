use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Text that could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A cyclic word that does not follow the transition diagram.
    #[error("inadmissible word: {0}")]
    Inadmissible(String),
    /// An iteration or flow exceeded its step cap.
    #[error("step cap of {0} exceeded")]
    StepCap(u64),
    /// A straight-line flow ran into a cone point.
    #[error("trajectory hits a cone point: {0}")]
    ConePoint(String),
    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
