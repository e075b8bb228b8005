//! Command-line front end: file format, subcommands and reports.

pub mod commands;
pub mod parse;
pub mod report;

pub use commands::{run, run_args, Cli, Command, Outcome};
pub use parse::{
    parse_expression, parse_foliation_file, parse_local, parse_projective, FoliationFile, Symbol,
};
pub use report::{render, Format, SCHEMA};
