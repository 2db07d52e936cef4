//! Library side of the `famcat` command-line tool.

pub mod certificate;
pub mod commands;
pub mod schema;
pub mod workspace;

pub use certificate::{Certificate, Verdict, EXIT_MISUSE};
pub use commands::{run, Cli, CliError, Command};
pub use workspace::{LoadError, Workspace};
