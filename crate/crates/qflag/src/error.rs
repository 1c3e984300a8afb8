use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Unsupported or inconsistent configuration (Cartan type, rank, q, ...).
    #[error("configuration error: {0}")]
    Config(String),
    /// Input outside an operation's domain (non-dominant weight, bad index).
    #[error("domain error: {0}")]
    Domain(String),
    /// A size cap was exceeded (module dimension, component size).
    #[error("size cap exceeded: {0}")]
    Overflow(String),
    /// Internal inconsistency; signals a convention bug and is deliberately loud.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
