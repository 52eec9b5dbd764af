//! Rounds to span a random stabilizer group, per `(t, k)`.

use serde::Serialize;
use stabscope_core::codes::random_instance;
use stabscope_core::learner::rounds_to_span;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::grid::{self, trial_rng, trial_seed};
use crate::output::{to_csv, RunOutput, Summary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fig2aRow {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    /// Empty when the round cap was reached.
    pub m_rounds: Option<usize>,
}

pub fn rows(cfg: &ExperimentConfig, workers: usize) -> Result<Vec<Fig2aRow>> {
    let mut cells = Vec::new();
    for &n in &cfg.n {
        for &t in &cfg.t {
            for spec in &cfg.k {
                let k = spec.resolve(n)?;
                for trial in 0..cfg.trials {
                    let parts = [cfg.experiment.code(), n as u64, t as u64, k as u64, trial as u64];
                    cells.push((n, t, k, trial, trial_seed(cfg.master_seed, &parts)));
                }
            }
        }
    }
    grid::run(&cells, workers, |&(n, t, k, trial, seed)| {
        let mut rng = trial_rng(seed);
        let weyl = random_instance(n, t, &mut rng)?.weyl;
        let m = rounds_to_span(&weyl, k, &mut rng, cfg.round_cap)?.spanned();
        Ok(Fig2aRow {
            n,
            t,
            k,
            trial,
            seed,
            m_rounds: m,
        })
    })
}

pub fn summarize(rows: &[Fig2aRow]) -> Summary {
    let mut s = Summary::new("fig2a");
    for r in rows {
        let point = format!("n={} t={} k={}", r.n, r.t, r.k);
        s.add(&point, "m_rounds", r.m_rounds.map(|m| m as f64));
    }
    s
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> Result<RunOutput> {
    let rows = rows(cfg, workers)?;
    Ok(RunOutput {
        files: vec![("fig2a.csv".into(), to_csv(&rows)?)],
        summary: summarize(&rows).rows(cfg.min_summary_trials),
    })
}
