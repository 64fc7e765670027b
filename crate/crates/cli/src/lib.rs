//! Workspace loading and command dispatch for the `hopfva` binary.

pub mod commands;
pub mod polyparse;
pub mod workspace;

pub use commands::{run, Options, Report, Status, COMMANDS};
pub use workspace::{LoadError, Workspace};
