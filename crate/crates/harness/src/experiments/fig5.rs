//! Rounds to span for code families and random instances.

use serde::Serialize;
use stabscope_core::codes::{color_instance, random_css_instance, random_instance, toric_instance, CodeInstance};
use stabscope_core::learner::rounds_to_span;
use stabscope_core::Rng;

use crate::config::{CodeFamily, ExperimentConfig};
use crate::error::Result;
use crate::grid::{self, trial_rng, trial_seed};
use crate::output::{to_csv, RunOutput, Summary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fig5Row {
    pub family: &'static str,
    pub size_param: usize,
    pub n: usize,
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    pub m_rounds: Option<usize>,
}

/// Number of qubits of a family member.
pub fn family_n(family: CodeFamily, size: usize) -> usize {
    match family {
        CodeFamily::Random | CodeFamily::Css => size,
        CodeFamily::Toric => 2 * size * size,
        CodeFamily::Color => (3 * size * size + 1) / 4,
    }
}

/// The instance of one trial. Random families draw a fresh instance per
/// trial; the CSS family uses `n / 3` X checks and `n / 3` Z checks.
pub fn instance(family: CodeFamily, size: usize, rng: &mut Rng) -> Result<CodeInstance> {
    Ok(match family {
        CodeFamily::Random => random_instance(size, 0, rng)?,
        CodeFamily::Css => random_css_instance(size, size / 3, size / 3, rng)?,
        CodeFamily::Toric => toric_instance(size)?,
        CodeFamily::Color => color_instance(size)?,
    })
}

pub fn rows(cfg: &ExperimentConfig, workers: usize) -> Result<Vec<Fig5Row>> {
    let mut cells = Vec::new();
    for f in &cfg.families {
        for &size in &f.sizes {
            let n = family_n(f.family, size);
            for spec in &cfg.k {
                let k = spec.resolve(n)?;
                for trial in 0..cfg.trials {
                    let parts = [
                        cfg.experiment.code(),
                        f.family as u64,
                        size as u64,
                        k as u64,
                        trial as u64,
                    ];
                    cells.push((f.family, size, n, k, trial, trial_seed(cfg.master_seed, &parts)));
                }
            }
        }
    }
    grid::run(&cells, workers, |&(family, size, n, k, trial, seed)| {
        let mut rng = trial_rng(seed);
        let inst = instance(family, size, &mut rng)?;
        debug_assert_eq!(inst.n, n);
        let m = rounds_to_span(&inst.weyl, k, &mut rng, cfg.round_cap)?.spanned();
        Ok(Fig5Row {
            family: family.name(),
            size_param: size,
            n,
            k,
            trial,
            seed,
            m_rounds: m,
        })
    })
}

pub fn summarize(rows: &[Fig5Row]) -> Summary {
    let mut s = Summary::new("fig5");
    for r in rows {
        let point = format!("family={} size={} n={} k={}", r.family, r.size_param, r.n, r.k);
        s.add(&point, "m_rounds", r.m_rounds.map(|m| m as f64));
    }
    s
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> Result<RunOutput> {
    let rows = rows(cfg, workers)?;
    Ok(RunOutput {
        files: vec![("fig5.csv".into(), to_csv(&rows)?)],
        summary: summarize(&rows).rows(cfg.min_summary_trials),
    })
}
