use std::fmt;
use std::path::{Path, PathBuf};

use streamspmm::Error as CoreError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    /// A schedule, stream or result failed a check.
    Validation = 1,
    /// Capacity exceeded or an invalid configuration/argument.
    Config = 2,
    /// Reading or writing a file failed, or an input file is malformed.
    Io = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { kind: ExitKind::Validation, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self { kind: ExitKind::Config, message: message.into() }
    }

    pub fn io(path: &Path, err: impl fmt::Display) -> Self {
        Self { kind: ExitKind::Io, message: format!("{}: {err}", path.display()) }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let kind = match &err {
            CoreError::Io { .. } | CoreError::MatrixMarket { .. } => ExitKind::Io,
            CoreError::PointerList(_) | CoreError::StreamFormat(_) => ExitKind::Validation,
            CoreError::InvalidArgument(_)
            | CoreError::Config(_)
            | CoreError::RowCapacity { .. }
            | CoreError::ScratchpadCapacity { .. }
            | CoreError::FieldRange { .. }
            | CoreError::StreamMismatch(_) => ExitKind::Config,
        };
        Self { kind, message: err.to_string() }
    }
}

/// Attaches a path to I/O failures of `std::fs` calls.
pub trait IoContext<T> {
    fn at(self, path: impl Into<PathBuf>) -> Result<T, CliError>;
}

impl<T> IoContext<T> for std::io::Result<T> {
    fn at(self, path: impl Into<PathBuf>) -> Result<T, CliError> {
        self.map_err(|e| CliError::io(&path.into(), e))
    }
}
