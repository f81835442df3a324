//! `mcat`: JSON documents in, law reports, decompositions and DOT diagrams
//! out.
//!
//! Exit codes: 0 for a positive answer (laws pass, decomposable, product
//! state), 1 for a negative one, 2 for usage or input errors.

pub mod cli;
pub mod commands;
pub mod document;
pub mod dot;
mod json;
pub mod report;

pub use cli::{Cli, Command};
pub use commands::{run, CliError, Output, TOLERANCE_ENV};
pub use document::{parse, Diagnostic, Document, Workspace};
pub use report::{Outcome, Report};
