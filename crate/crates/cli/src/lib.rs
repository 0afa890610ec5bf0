//! Command-line front end: JSON system documents, command dispatch and
//! deterministic reports.

pub mod document;
pub mod error;
pub mod report;
pub mod run;

pub use error::CliError;
pub use run::{execute, Args, Command, Format};
