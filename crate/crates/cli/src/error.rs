use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] cotstruct_core::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn context(self, path: &Path) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            e => e,
        }
    }

    /// 1 for bad input, 2 for a tower that does not terminate, 3 when an
    /// internal invariant fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(cotstruct_core::Error::NonTerminating { .. }) => 2,
            CliError::Engine(cotstruct_core::Error::InvariantViolated(_)) => 3,
            _ => 1,
        }
    }
}
