//! Crate-wide error type.

/// Errors surfaced by configuration, training, and file I/O.
///
/// Shape mismatches on the hot numeric paths are treated as programmer error
/// and panic via `assert!`; `Error` covers conditions a caller can actually
/// hit with bad input or bad luck (malformed configs, NaN losses, I/O).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration: bad dimensions, malformed keys, inconsistent
    /// geometry.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called in a state that cannot serve it (e.g. sampling
    /// from an empty replay buffer).
    #[error("usage error: {0}")]
    Usage(String),

    /// A NaN or infinity appeared where only finite values are allowed. The
    /// run is aborted with this diagnostic.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// Malformed checkpoint or metrics file.
    #[error("corrupt file: {0}")]
    Corrupt(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn corrupt(msg: impl Into<String>) -> Self {
        Error::Corrupt(msg.into())
    }
}
