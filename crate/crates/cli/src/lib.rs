//! Workbench front end: the `.wb` input format, command evaluation over every
//! ring, module and sequence of an input file, and the JSON report.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{run, Command, Options, RunError, Theorem};
pub use report::{Report, Status};
