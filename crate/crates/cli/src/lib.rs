//! Library behind the `degen-lab` command line tool.

pub mod commands;
pub mod render;
pub mod scenario;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] degen_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error is an input error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
