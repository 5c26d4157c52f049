//! Command-line front end for `gqfi`: CSV figure sweeps, state reports and the
//! numerical self-test.

pub mod app;
pub mod config;
pub mod error;
pub mod format;
pub mod report;
pub mod selftest;
pub mod sweeps;
pub mod table;

pub use app::run;
pub use error::CliError;
