//! File formats, figures and subcommand plumbing for `phyllo-core`.

pub mod config;
pub mod error;
pub mod json;
pub mod report;
pub mod svg;
pub mod tables;
pub mod thresholds;

pub use config::{ColorMap, Command, Format, Geometry, PatternParams, Projection, RunConfig};
pub use error::CliError;
pub use report::{analyze, Analysis};
