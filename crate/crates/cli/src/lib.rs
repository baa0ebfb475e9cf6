//! Front end for the `e3core` check suites: suite registry, report
//! emission and the intersection-number expression language.

pub mod app;
pub mod dsl;
pub mod error;
pub mod report;
pub mod suites;

pub use error::{CliError, Result};
