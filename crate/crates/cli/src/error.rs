use std::fmt;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters (exit 2).
    Usage(String),
    /// A validation check failed (exit 1).
    Validation(String),
    /// A precondition on resources such as lattice size failed (exit 3).
    Precondition(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Precondition(_) | CliError::Io(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<cra_core::Error> for CliError {
    fn from(e: cra_core::Error) -> Self {
        match e {
            cra_core::Error::LatticeTooSmall { .. } => CliError::Precondition(e.to_string()),
            cra_core::Error::Inconsistent { .. } => CliError::Validation(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}
