//! Command-line front end: graph generation, solving, the reduction gadget,
//! the verification suites and benchmarks. Every subcommand but `gen`
//! prints a [`RunReport`] as JSON.

pub mod args;
pub mod commands;
pub mod report;

pub use args::Cli;
pub use commands::{run, CliError, Output};
pub use report::{RunReport, Status};
