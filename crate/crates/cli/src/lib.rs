//! Command-line front end: one subcommand per library module plus a full
//! pipeline, each producing a [`report::Report`].

pub mod commands;
pub mod report;

pub use commands::{run, CliError, Command};
pub use report::{Report, Status};
