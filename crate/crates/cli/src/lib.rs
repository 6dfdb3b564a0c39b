//! Command-line front end: a small language for naming unstable modules,
//! the commands that compute with them, and their reports.

pub mod commands;
pub mod eval;
pub mod expr;
pub mod report;

pub use commands::{run, Command, CommandError, Options};
pub use expr::{parse, render, ModuleExpr};
pub use report::Report;
