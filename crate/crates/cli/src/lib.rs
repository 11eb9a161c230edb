//! Command implementations and table harnesses behind the `redic` binary.

pub mod commands;
pub mod input;
pub mod report;
pub mod tables;

pub use commands::{EXIT_FAIL, EXIT_OK, EXIT_USAGE};
pub use input::{load_graph, CliError, GraphFormat, GraphSource, LoadedGraph};
pub use report::{CommandOutput, Report};
