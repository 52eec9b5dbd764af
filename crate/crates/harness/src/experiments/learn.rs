//! End-to-end runs of the learner on random instances.

use serde::Serialize;
use stabscope_core::codes::random_instance;
use stabscope_core::learner::{algorithm1, LearnerParams};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::grid::{self, trial_rng, trial_seed};
use crate::output::{to_csv, RunOutput, Summary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LearnRow {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub m: usize,
    #[serde(rename = "N_S")]
    pub n_s: usize,
    pub trial: usize,
    pub seed: u64,
    /// The estimate equals the stabilizer group.
    pub success: u8,
    pub isotropic: u8,
    /// The estimate contains the stabilizer group.
    pub contains_weyl: u8,
    /// The estimate lies inside the stabilizer group.
    pub within_weyl: u8,
    pub dim_hat: usize,
}

pub fn rows(cfg: &ExperimentConfig, workers: usize) -> Result<Vec<LearnRow>> {
    let mut cells = Vec::new();
    for &n in &cfg.n {
        for &t in &cfg.t {
            for spec in &cfg.k {
                let k = spec.resolve(n)?;
                let defaults = LearnerParams::defaults(n, t);
                let sample_sizes = if cfg.n_s.is_empty() {
                    vec![defaults.n_s]
                } else {
                    cfg.n_s.clone()
                };
                for &n_s in &sample_sizes {
                    let params = LearnerParams {
                        k,
                        n_s,
                        ..defaults.clone()
                    };
                    params.validate()?;
                    for trial in 0..cfg.trials {
                        let parts = [
                            cfg.experiment.code(),
                            n as u64,
                            t as u64,
                            k as u64,
                            n_s as u64,
                            trial as u64,
                        ];
                        cells.push((params.clone(), trial, trial_seed(cfg.master_seed, &parts)));
                    }
                }
            }
        }
    }
    grid::run(&cells, workers, |(params, trial, seed)| {
        let mut rng = trial_rng(*seed);
        let weyl = random_instance(params.n, params.t, &mut rng)?.weyl;
        let out = algorithm1(&weyl, params, &mut rng)?;
        Ok(LearnRow {
            n: params.n,
            t: params.t,
            k: params.k,
            m: params.m,
            n_s: params.n_s,
            trial: *trial,
            seed: *seed,
            success: (out.s_hat == weyl) as u8,
            isotropic: out.isotropic as u8,
            contains_weyl: weyl.is_subspace_of(&out.s_hat)? as u8,
            within_weyl: out.s_hat.is_subspace_of(&weyl)? as u8,
            dim_hat: out.s_hat.dim(),
        })
    })
}

pub fn summarize(rows: &[LearnRow]) -> Summary {
    let mut s = Summary::new("learn");
    for r in rows {
        let point = format!("n={} t={} k={} m={} N_S={}", r.n, r.t, r.k, r.m, r.n_s);
        s.add(&point, "success", Some(r.success as f64));
        s.add(&point, "isotropic", Some(r.isotropic as f64));
        s.add(&point, "contains_weyl", Some(r.contains_weyl as f64));
    }
    s
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> Result<RunOutput> {
    let rows = rows(cfg, workers)?;
    Ok(RunOutput {
        files: vec![("learn.csv".into(), to_csv(&rows)?)],
        summary: summarize(&rows).rows(cfg.min_summary_trials),
    })
}
