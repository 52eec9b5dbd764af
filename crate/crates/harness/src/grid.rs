//! Deterministic parallel map over a grid of trial cells.

use rayon::prelude::*;
use stabscope_core::rng::stream_id;
use stabscope_core::Rng;

use crate::error::{HarnessError, Result};

/// Seed of one trial, derived from the master seed and the cell's
/// parameter tuple. The trial's stream is `Rng::seed_from_u64(seed)`.
pub fn trial_seed(master_seed: u64, parts: &[u64]) -> u64 {
    let mut all = Vec::with_capacity(parts.len() + 1);
    all.push(master_seed);
    all.extend_from_slice(parts);
    stream_id(&all)
}

pub fn trial_rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Maps `f` over `cells` on `workers` threads. Output order is the input
/// order, so results do not depend on scheduling.
pub fn run<C, T, F>(cells: &[C], workers: usize, f: F) -> Result<Vec<T>>
where
    C: Sync,
    T: Send,
    F: Fn(&C) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    pool.install(|| cells.par_iter().map(&f).collect())
}
