//! Experiment pipelines and reports behind the `ginlab` command.

pub mod experiments;
pub mod report;

pub use experiments::*;
pub use report::{Check, ExperimentReport};
