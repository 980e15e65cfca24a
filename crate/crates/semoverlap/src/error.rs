//! Crate-wide error type and result alias.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by loaders, solvers, and pipeline stages.
#[derive(Debug, Error)]
pub enum Error {
    /// Underlying I/O failure while reading or writing `path`.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed content at a specific line of a text input.
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// Binary payload ended before the header-declared record count.
    #[error("truncated embedding payload in {path}: expected {expected} bytes, got {actual}")]
    TruncatedPayload {
        path: PathBuf,
        expected: u64,
        actual: u64,
    },

    /// An embedding file yielded no usable entries.
    #[error("embedding file {path} contains no usable entries")]
    EmptyVocabulary { path: PathBuf },

    /// A transport marginal has no mass.
    #[error("empty distribution on the {side} side")]
    EmptyDistribution { side: &'static str },

    /// Marginal lengths do not match the cost matrix shape.
    #[error("shape mismatch: {context}")]
    ShapeMismatch { context: String },

    /// A numeric argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The document ran out of unexcluded sentences during extraction.
    #[error(
        "document exhausted for pair {pair_id}: no unexcluded sentence left for \
         summary sentence {j} (slot {l} of {n})"
    )]
    InsufficientDocument {
        pair_id: String,
        j: usize,
        l: usize,
        n: usize,
    },

    /// A rerank slot arrived with no candidates.
    #[error("rerank slot {slot} has no candidates")]
    EmptySlot { slot: usize },

    /// Candidate and reference corpora do not align by id.
    #[error("corpora misaligned: {0}")]
    Misaligned(String),

    /// An evaluation or profile was requested over zero usable pairs.
    #[error("no usable pairs: {0}")]
    NoPairs(String),

    /// Configuration rejected before any work started.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wrap an I/O error with the path it occurred on.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Build a parse error for `path:line`.
    pub fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
