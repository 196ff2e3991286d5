//! Command-line front end for `calvo-core`: configuration, dispatch, table
//! reproduction and scenario reports.
//!
//! Every subcommand produces a JSON document and a CSV table; column orders are
//! listed in `SCHEMA.md`. Errors go to stderr as one JSON object, with exit code
//! 2 for configuration or input errors and 1 for numerical failures.

// `!(x > 0)` style guards are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod config;
pub mod error;
pub mod run;
pub mod scenarios;
pub mod tables;

pub use config::RunConfig;
pub use error::CliError;
pub use run::{execute, run, Output};
