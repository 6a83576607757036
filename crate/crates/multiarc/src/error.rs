use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] multiarc_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 1 for a falsified claim, 2 for anything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(multiarc_core::Error::Falsified(_)) => 1,
            _ => 2,
        }
    }
}
