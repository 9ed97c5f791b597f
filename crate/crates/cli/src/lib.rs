//! Command-line workbench over `pcw_core`: validation, reports, table
//! comparisons, pointwise verification and the brute-force star oracle.

pub mod config;
pub mod json;
pub mod oracle;
pub mod render;
pub mod run;
pub mod tables;

pub use config::{Command, Format, RunConfig};
pub use run::{run, Outcome};
