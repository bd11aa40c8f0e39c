use thiserror::Error;

/// Command-line failure modes, each with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Argument parsing (clap decides between usage error and help text).
    #[error(transparent)]
    Usage(#[from] clap::Error),

    /// Parameters outside an operation's preconditions. Exit 2.
    #[error("invalid parameters: {0}")]
    Validation(String),

    /// A redundant internal computation disagreed, or an output could not
    /// be produced mid-run. Exit 1.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        Self::Validation(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Self::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            // clap uses 2 for usage errors and 0 for --help/--version
            Self::Usage(e) => match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            },
            Self::Validation(_) => 2,
            Self::Internal(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Internal(format!("io failure: {e}"))
    }
}
