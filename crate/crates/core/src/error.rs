use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    /// A combinatorial size exceeded the configured limit.
    #[error("size guard exceeded: {what} needs {size} basis elements, limit is {limit} (raise it with {flag})")]
    Guard {
        what: String,
        size: u128,
        limit: u128,
        flag: &'static str,
    },

    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),

    #[error("maps do not compose to zero: {0}")]
    NonZeroComposite(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("square does not commute: {0}")]
    NotChainMap(String),

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
