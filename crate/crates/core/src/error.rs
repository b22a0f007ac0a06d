use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the CLI exit-code contract: `Config` and `Usage`
/// are caller mistakes, `Resource` is a tripped size guard, and `Integrity`
/// means an internal consistency check failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported representation: {0}")]
    Unsupported(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
