use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] cyclelift::Error),

    #[error("cache: {0}")]
    Io(#[from] std::io::Error),

    #[error("output: {0}")]
    Csv(#[from] csv::Error),

    #[error("output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 when a numerical identity could not be confirmed, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(cyclelift::Error::ToleranceNotMet { .. }) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
