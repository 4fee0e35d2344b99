//! Command-line front end: JSON definition files, commands and report
//! output for the `hom3lie` library.

pub mod commands;
pub mod files;
pub mod output;

pub use commands::{run, Cli, Command};
