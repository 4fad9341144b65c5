//! Command implementations behind the `descon` binary. Each command renders
//! its full output into a string so it can be tested without a process.

pub mod args;
pub mod commands;
pub mod present;

pub use args::{Cli, Command, Format, TableKind};
pub use commands::{run, Output};
