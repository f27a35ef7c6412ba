//! Library side of the `latbox` command: cap sampling, file formats, the
//! command implementations and the verification suites. `main.rs` only
//! parses arguments and writes files.

pub mod commands;
pub mod io;
pub mod sphere;
pub mod verify;

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] latbox::Error),

    #[error("center must be a unit vector (norm {0})")]
    BadCenter(f64),

    #[error("radius must lie in (0, 90) degrees, got {0}")]
    BadRadius(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}
