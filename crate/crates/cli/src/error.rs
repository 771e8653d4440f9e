use thiserror::Error;

/// Failures while reading a manifest; every variant carries its line number.
#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unresolved reference `{name}`")]
    Unresolved { line: usize, name: String },
    #[error("line {line}: degree inconsistency: {msg}")]
    Degree { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: curvedg::Error },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("{0}")]
    Usage(String),
    #[error("unresolved reference `{0}`")]
    Unresolved(String),
    #[error(transparent)]
    Core(#[from] curvedg::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Exit statuses of the command-line driver.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const INVALID_INPUT: i32 = 2;
    pub const VALIDATION_FAILURE: i32 = 3;
    pub const REJECTED: i32 = 4;
    pub const INTERNAL: i32 = 5;
}

fn core_code(e: &curvedg::Error) -> i32 {
    match e {
        curvedg::Error::Validation(_) => exit::VALIDATION_FAILURE,
        curvedg::Error::Internal(_) => exit::INTERNAL,
        _ => exit::INVALID_INPUT,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Manifest(ManifestError::Invalid { source, .. }) => core_code(source),
            CliError::Core(e) => core_code(e),
            _ => exit::INVALID_INPUT,
        }
    }
}
