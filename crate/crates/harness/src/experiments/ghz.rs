//! GHZ worst case: per-round escape events and the one-round adaptive fix.

use serde::Serialize;
use stabscope_core::cds::DifferenceSampler;
use stabscope_core::clifford::{sample_block_clifford, BlockSymplectic, SymplecticMap};
use stabscope_core::codes::ghz_instance;
use stabscope_core::learner::{algorithm1, LearnerParams};
use stabscope_core::{BitVec, Echelon, Rng, Subspace};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::grid::{self, trial_rng, trial_seed};
use crate::output::{to_csv, RunOutput, Summary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhzRow {
    pub n: usize,
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    /// `C(S \ T0)` meets the Z-type group.
    pub hit: u8,
    pub adaptive_success: u8,
    /// `C(x0 + Z)` meets the Z-type group, `x0 = X^n`.
    pub hit_coset: u8,
}

/// Difference samples used to test each candidate logical.
pub const CANDIDATE_SAMPLES: usize = 32;

/// Single-qubit map sending the local Pauli `(x, z)` to Z.
fn to_z(x: bool, z: bool) -> SymplecticMap {
    let col = |s: &str| BitVec::parse(s).expect("two-bit literal");
    let cols = match (x, z) {
        (true, false) => vec![col("01"), col("10")],
        (true, true) => vec![col("11"), col("10")],
        _ => vec![col("10"), col("01")],
    };
    SymplecticMap::from_columns(1, cols).expect("columns form a symplectic map")
}

/// Product of single-qubit maps sending `g` to a Z-type label.
pub fn rotate_to_z(g: &BitVec, n: usize) -> Result<BlockSymplectic> {
    let blocks = (0..n).map(|i| to_z(g.get(i), g.get(n + i))).collect();
    Ok(BlockSymplectic::new(n, 1, blocks)?)
}

/// Whether every difference sample measured in the basis of
/// [`rotate_to_z`]`(g)` is consistent with `g` being a symmetry of `weyl`.
pub fn consistent(weyl: &Subspace, g: &BitVec, samples: usize, rng: &mut Rng) -> Result<bool> {
    let n = weyl.num_qubits();
    let c = rotate_to_z(g, n)?;
    let parity = c.apply_bits(g).slice(n, n);
    let sampler = DifferenceSampler::new(&c.apply_subspace(weyl)?)?;
    Ok((0..samples).all(|_| !sampler.sample(rng).dot(&parity)))
}

/// Representatives of the nonzero classes of `t0^perp / t0`.
pub fn quotient_representatives(t0: &Subspace) -> Result<Vec<BitVec>> {
    let perp = t0.symplectic_complement()?;
    let mut ech = Echelon::new(t0.ambient());
    for b in t0.basis() {
        ech.insert(b.clone());
    }
    let mut extra = Vec::new();
    for b in perp.basis() {
        if ech.insert(b.clone()) {
            extra.push(b.clone());
        }
    }
    let mut reps = Vec::new();
    for mask in 1u64..(1 << extra.len()) {
        let mut v = BitVec::zeros(t0.ambient());
        for (i, e) in extra.iter().enumerate() {
            if mask >> i & 1 == 1 {
                v.xor_assign(e);
            }
        }
        reps.push(v);
    }
    Ok(reps)
}

/// Learns `T0` non-adaptively, then accepts the unique coset of
/// `T0^perp / T0` consistent with a second, targeted measurement.
pub fn adaptive_demo(n: usize, k: usize, rng: &mut Rng) -> Result<bool> {
    let (inst, _) = ghz_instance(n)?;
    let mut params = LearnerParams::defaults(n, 0);
    params.k = k;
    let learned = algorithm1(&inst.weyl, &params, rng)?.s_hat;
    if learned == inst.weyl {
        return Ok(true);
    }
    if learned.dim() + 1 != n || !learned.is_isotropic() {
        return Ok(false);
    }
    let mut accepted = Vec::new();
    for g in quotient_representatives(&learned)? {
        if consistent(&inst.weyl, &g, CANDIDATE_SAMPLES, rng)? {
            accepted.push(g);
        }
    }
    if accepted.len() != 1 {
        return Ok(false);
    }
    let full = learned.sum(&Subspace::span(2 * n, &accepted)?)?;
    Ok(full == inst.weyl)
}

pub fn rows(cfg: &ExperimentConfig, workers: usize) -> Result<Vec<GhzRow>> {
    let mut cells = Vec::new();
    for &n in &cfg.n {
        for spec in &cfg.k {
            let k = spec.resolve(n)?;
            for trial in 0..cfg.trials {
                let parts = [cfg.experiment.code(), n as u64, k as u64, trial as u64];
                cells.push((n, k, trial, trial_seed(cfg.master_seed, &parts)));
            }
        }
    }
    grid::run(&cells, workers, |&(n, k, trial, seed)| {
        let mut rng = trial_rng(seed);
        let (_, t0) = ghz_instance(n)?;
        let x0 = BitVec::ones(n).concat(&BitVec::zeros(n));
        let c = sample_block_clifford(n, k, &mut rng)?;
        let hit = c.coset_meets_z(&x0, &t0)?;
        let hit_coset = c.coset_meets_z(&x0, &Subspace::z_type(n))?;
        let adaptive = adaptive_demo(n, k, &mut rng)?;
        Ok(GhzRow {
            n,
            k,
            trial,
            seed,
            hit: hit as u8,
            adaptive_success: adaptive as u8,
            hit_coset: hit_coset as u8,
        })
    })
}

pub fn summarize(rows: &[GhzRow]) -> Summary {
    let mut s = Summary::new("ghz");
    for r in rows {
        let point = format!("n={} k={}", r.n, r.k);
        s.add(&point, "hit", Some(r.hit as f64));
        s.add(&point, "hit_coset", Some(r.hit_coset as f64));
        s.add(&point, "adaptive_success", Some(r.adaptive_success as f64));
    }
    s
}

pub fn run(cfg: &ExperimentConfig, workers: usize) -> Result<RunOutput> {
    let rows = rows(cfg, workers)?;
    Ok(RunOutput {
        files: vec![("ghz.csv".into(), to_csv(&rows)?)],
        summary: summarize(&rows).rows(cfg.min_summary_trials),
    })
}
