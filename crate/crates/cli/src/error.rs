use thiserror::Error;

/// Failures that stop a command, with stable exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error("invalid: {0}")]
    Validation(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io(_) => 2,
            CliError::Validation(_) => 3,
            CliError::UnknownName(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Io(_) => "io",
            CliError::Validation(_) => "validation",
            CliError::UnknownName(_) => "unknown-name",
        }
    }
}

pub fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}
