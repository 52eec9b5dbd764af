pub mod counts;
pub mod fig2a;
pub mod fig2b;
pub mod fig5;
pub mod ghz;
pub mod learn;

use crate::config::{Experiment, ExperimentConfig};
use crate::error::Result;
use crate::output::RunOutput;

/// Runs the experiment named in `cfg`.
pub fn run(cfg: &ExperimentConfig, workers: usize) -> Result<RunOutput> {
    match cfg.experiment {
        Experiment::Fig2a => fig2a::run(cfg, workers),
        Experiment::Fig2b => fig2b::run(cfg, workers),
        Experiment::Fig5 => fig5::run(cfg, workers),
        Experiment::Ghz => ghz::run(cfg, workers),
        Experiment::Counts => counts::run(cfg.min_summary_trials),
        Experiment::Learn => learn::run(cfg, workers),
    }
}
