//! Workspace files and subcommands for the `mackey` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod workspace;

pub use error::CliError;
pub use workspace::Workspace;
