//! Experiment driver: configuration, a deterministic trial grid, and the
//! CSV tables behind each figure.

pub mod config;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod output;

pub use config::{BlockSpec, Experiment, ExperimentConfig, Preset};
pub use error::{HarnessError, Result};
pub use experiments::run;
pub use output::{RunOutput, SummaryRow};
