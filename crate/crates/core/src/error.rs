use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("cap too low: {0}")]
    CapTooLow(String),
    #[error("diagnostic abort: {0}")]
    Diagnostic(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn usage(msg: String) -> Self {
        Error::Usage(msg)
    }

    pub fn parse(s: &str) -> Self {
        Error::Parse(s.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
