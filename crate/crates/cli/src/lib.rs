//! File formats, commands and reports for the `gpdkit` binary.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{parse_args, run, Cli, Command};
pub use format::{parse, serialize, Document, ParseError};
pub use report::{Report, Verdict};
