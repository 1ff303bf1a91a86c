use thiserror::Error;

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Engine(#[from] penney_core::Error),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Engine(penney_core::Error::RouteMismatch { .. }) => 3,
            CliError::Engine(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<penney_core::PatternError> for CliError {
    fn from(e: penney_core::PatternError) -> Self {
        CliError::Engine(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
