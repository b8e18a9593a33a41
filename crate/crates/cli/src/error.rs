use std::io;
use std::path::{Path, PathBuf};

use hidden_tree_core::Error as ModelError;

/// Everything the front end can fail with, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config keys or parameter values.
    #[error("{0}")]
    Usage(String),
    /// Parameters rejected by the model.
    #[error(transparent)]
    Parameter(ModelError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    /// Malformed input file.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    /// Output files no longer match their manifest.
    #[error("{0} file(s) failed digest verification")]
    Verification(usize),
    /// Metric computation failed.
    #[error("analysis failed: {0}")]
    Analysis(ModelError),
}

/// Result alias for the front end.
pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// Process exit status: 1 usage/parameter, 2 I/O or input format, 3 analysis.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parameter(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Verification(_) => 2,
            CliError::Analysis(_) => 3,
        }
    }

    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn parse(path: &Path, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidParameter { .. } => CliError::Parameter(e),
            other => CliError::Analysis(other),
        }
    }
}
