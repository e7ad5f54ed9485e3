//! Error taxonomy shared by the whole crate.
//!
//! Three categories matter to callers (and map onto CLI exit codes):
//! parse errors (malformed input), domain errors (well-formed input that
//! violates a mathematical precondition), and resource errors (a configured
//! cap or budget was exceeded).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input (JSON syntax, bad quiver file, bad braid word, ...).
    #[error("parse error: {0}")]
    Parse(String),
    /// Input is well-formed but violates a precondition (unknown vertex,
    /// mutation at a non-proper vertex, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured cap or budget was exceeded (chordless-cycle cap,
    /// exploration limits, minor-count cap, ...).
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
