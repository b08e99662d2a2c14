use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid mathematical input: non-prime characteristic, singular matrix,
    /// element outside a group, and the like.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("budget exceeded: {what} reached {reached} (limit {limit})")]
    Budget { what: String, reached: u64, limit: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A catalog construction failed its own consistency checks.
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Usage(_) | Error::Unsupported(_) | Error::Parse(_) => 2,
            Error::Budget { .. } => 3,
            Error::Construction(_) | Error::Internal(_) => 4,
            Error::Io(_) | Error::Json(_) => 1,
        }
    }

    pub(crate) fn budget(what: &str, reached: u64, limit: u64) -> Error {
        Error::Budget { what: what.to_string(), reached, limit }
    }
}
