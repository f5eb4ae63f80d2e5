use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Abort(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 verification failure, 2 usage, 3 cap or diagnostic abort.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Abort(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<ogc_core::Error> for CliError {
    fn from(e: ogc_core::Error) -> Self {
        use ogc_core::Error as E;
        match e {
            E::Usage(_) | E::Parse(_) => CliError::Usage(e.to_string()),
            E::CapTooLow(_) | E::Diagnostic(_) => CliError::Abort(e.to_string()),
            E::Verification(_) => CliError::Verification(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
