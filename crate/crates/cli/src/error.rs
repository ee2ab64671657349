use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),

    #[error(transparent)]
    Core(#[from] nonclassical::Error),

    #[error("i/o error on '{path}': {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit code: 1 parameter error, 2 convergence error, 3 i/o error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) => 1,
            CliError::Core(nonclassical::Error::NonConvergence { .. }) => 2,
            CliError::Core(_) => 1,
            CliError::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
