use std::fmt;

/// Exit codes: 0 success, 1 usage error, 2 data error.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<texgrain_core::Error> for CliError {
    fn from(e: texgrain_core::Error) -> Self {
        match e {
            texgrain_core::Error::Parameter(msg) => CliError::Usage(msg),
            e @ texgrain_core::Error::InvalidMaskSize(_) => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Data(format!("CSV: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
