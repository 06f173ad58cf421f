use gradmat_core::error::Error as CoreError;

/// Failures of a command, each tied to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A certificate or cross-check failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Internal(msg) => CliError::Internal(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}

macro_rules! input {
    ($($arg:tt)*) => {
        $crate::error::CliError::Input(format!($($arg)*))
    };
}

macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::CliError::Internal(format!($($arg)*))
    };
}

pub(crate) use input;
pub(crate) use internal;
