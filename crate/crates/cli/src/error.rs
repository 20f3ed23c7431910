use std::path::PathBuf;

use bmfp_core::iterate::IterateError;
use bmfp_core::CertifyError;

/// Anything that makes the inputs unusable. Always exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error("certify: {0}")]
    Certify(#[from] CertifyError),
    #[error("iterate: {0}")]
    Iterate(#[from] IterateError),
    #[error("{0}")]
    Usage(String),
}

impl InputError {
    pub(crate) fn json(path: &std::path::Path, e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; position is reported separately
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        InputError::Json {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message,
        }
    }

    pub(crate) fn invalid(path: &std::path::Path, message: impl Into<String>) -> Self {
        InputError::Invalid {
            path: path.to_path_buf(),
            message: message.into(),
        }
    }
}
