//! Error type shared by every module.
//!
//! The variants map onto the CLI exit codes: `Parse` and `Domain` are the
//! caller's fault (exit 2), `Resource` means a configured cap was exceeded
//! (exit 3), and `Internal` signals a failed cross-check between two
//! independent computation paths, i.e. a bug (exit 4).

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input is well-formed but mathematically unusable (loops, rank 0,
    /// element outside the ground set, p outside (1, ∞), ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input text; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An enumeration or iteration cap was exceeded; the message names the cap.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// Two independent computation paths disagreed. Always a bug.
    #[error("internal cross-check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse { .. } => 2,
            Error::Resource(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
