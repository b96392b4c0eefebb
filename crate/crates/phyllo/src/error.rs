use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Parse { origin: String, line: usize, column: usize, message: String },
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("tessellation failed: {0}")]
    Tessellation(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("analysis anomaly: {0}")]
    Anomaly(String),
}

impl CliError {
    /// 1 for anything the caller can fix by changing the invocation or the
    /// input, 2 when the analysis itself finds a structural anomaly.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Anomaly(_) => 2,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<phyllo_core::generator::PatternError> for CliError {
    fn from(e: phyllo_core::generator::PatternError) -> Self {
        CliError::Pattern(e.to_string())
    }
}

impl From<phyllo_core::tessellation::TessellationError> for CliError {
    fn from(e: phyllo_core::tessellation::TessellationError) -> Self {
        CliError::Tessellation(e.to_string())
    }
}
