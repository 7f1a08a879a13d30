//! Library side of the `cauchy-voronoi` command-line tool: file formats,
//! site generation, command implementations and SVG rendering.

pub mod commands;
pub mod files;
pub mod render;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or invalid input; exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// A verification suite failed; exit code 1.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Could not write an output; exit code 2.
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<cauchy_voronoi::Error> for CliError {
    fn from(e: cauchy_voronoi::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
