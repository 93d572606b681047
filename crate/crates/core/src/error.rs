use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot realize extension: {0}")]
    Realize(String),
    #[error("data inconsistency: {0}")]
    Inconsistent(String),
    #[error("restriction not well defined: {0}")]
    Restriction(String),
    #[error("enumeration of {0} elements exceeds the configured cap {1}")]
    TooLarge(u64, u64),
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            msg: msg.into(),
        }
    }
}
