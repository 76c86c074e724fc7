use std::path::PathBuf;

use thiserror::Error;

use crate::scenario::ScenarioError;
use crate::tables::TableError;

/// Everything that can go wrong turning files and flags into a run.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Scenario { path: PathBuf, source: ScenarioError },
    #[error("{}: {source}", path.display())]
    Table { path: PathBuf, source: TableError },
    #[error("{0}")]
    Threads(String),
    #[error("{0}")]
    Argument(String),
}
