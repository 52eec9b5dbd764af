//! Experiment configuration: a built-in preset overlaid with an optional
//! JSON document.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use stabscope_core::learner::{default_block_size, FWHT_CAP};

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Fig2a,
    Fig2b,
    Fig5,
    Ghz,
    Counts,
    Learn,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fig2a => "fig2a",
            Experiment::Fig2b => "fig2b",
            Experiment::Fig5 => "fig5",
            Experiment::Ghz => "ghz",
            Experiment::Counts => "counts",
            Experiment::Learn => "learn",
        }
    }

    pub(crate) fn code(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Preset {
    /// Minutes on one core.
    #[default]
    Desk,
    /// Full-scale grids and trial counts.
    Paper,
}

/// Block size of the Clifford ensemble: a number, `"n"` for one block over
/// all qubits, or `"auto"` for the learner's default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BlockSpec {
    Fixed(usize),
    Named(BlockName),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockName {
    #[serde(rename = "n")]
    Full,
    #[serde(rename = "auto")]
    Auto,
}

impl BlockSpec {
    pub const FULL: BlockSpec = BlockSpec::Named(BlockName::Full);
    pub const AUTO: BlockSpec = BlockSpec::Named(BlockName::Auto);

    pub fn resolve(self, n: usize) -> Result<usize> {
        let k = match self {
            BlockSpec::Fixed(k) => k,
            BlockSpec::Named(BlockName::Full) => n,
            BlockSpec::Named(BlockName::Auto) => default_block_size(n),
        };
        if k == 0 || !n.is_multiple_of(k) {
            return Err(HarnessError::config(format!("block size {k} does not divide n = {n}")));
        }
        Ok(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    /// Random stabilizer states; size is `n`.
    Random,
    /// Logical states of random CSS codes; size is `n`.
    Css,
    /// Toric code; size is the distance.
    Toric,
    /// Triangular color code; size is the distance.
    Color,
}

impl CodeFamily {
    pub fn name(self) -> &'static str {
        match self {
            CodeFamily::Random => "random",
            CodeFamily::Css => "css",
            CodeFamily::Toric => "toric",
            CodeFamily::Color => "color",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySizes {
    pub family: CodeFamily,
    pub sizes: Vec<usize>,
}

/// How the hidden parity of a recovery trial is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HiddenMode {
    /// A uniform nonzero string `s`; success iff the estimate equals `s`.
    Planted,
    /// The Z-part of `C(S) ∩ Z` for a random stabilizer group and a random
    /// single-qubit Clifford layer; success iff the estimate lies in it, or
    /// nothing is detected when it is trivial.
    Stabilizer,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: Vec<usize>,
    pub t: Vec<usize>,
    pub k: Vec<BlockSpec>,
    pub trials: usize,
    pub master_seed: u64,
    /// Difference samples per measurement; empty means the learner default.
    pub n_s: Vec<usize>,
    pub p_err: Vec<f64>,
    pub alpha: f64,
    pub round_cap: usize,
    pub families: Vec<FamilySizes>,
    pub hidden: HiddenMode,
    /// Calibration trials with no hidden parity, per `N_S`.
    pub null_trials: usize,
    /// Groups with fewer trials are left out of `summary.csv`.
    pub min_summary_trials: usize,
    pub output: PathBuf,
}

const CAP_N: usize = 4096;

impl ExperimentConfig {
    pub fn preset(experiment: Experiment, preset: Preset) -> Self {
        let paper = preset == Preset::Paper;
        let mut c = ExperimentConfig {
            experiment,
            n: vec![],
            t: vec![],
            k: vec![],
            trials: if paper { 1000 } else { 300 },
            master_seed: 2024,
            n_s: vec![],
            p_err: vec![],
            alpha: 0.05,
            round_cap: 1_000_000,
            families: vec![],
            hidden: HiddenMode::Planted,
            null_trials: 0,
            min_summary_trials: 30,
            output: PathBuf::from("out").join(experiment.name()),
        };
        match experiment {
            Experiment::Fig2a => {
                c.n = vec![100];
                c.t = (0..=5).collect();
                c.k = vec![BlockSpec::Fixed(1), BlockSpec::FULL];
            }
            Experiment::Fig2b => {
                c.n = vec![if paper { 24 } else { 16 }];
                c.trials = if paper { 1000 } else { 200 };
                c.null_trials = c.trials;
                c.p_err = vec![0.0, 0.01, 0.05, 0.1];
                let top = if paper { 14 } else { 12 };
                c.n_s = (3..=top).map(|e| 1usize << e).collect();
            }
            Experiment::Fig5 => {
                c.trials = if paper { 1000 } else { 200 };
                c.k = vec![BlockSpec::Fixed(1), BlockSpec::FULL];
                c.families = if paper {
                    vec![
                        FamilySizes {
                            family: CodeFamily::Random,
                            sizes: vec![20, 40, 60, 80, 100],
                        },
                        FamilySizes {
                            family: CodeFamily::Css,
                            sizes: vec![20, 40, 60, 80, 100],
                        },
                        FamilySizes {
                            family: CodeFamily::Toric,
                            sizes: vec![3, 5, 7, 9],
                        },
                        FamilySizes {
                            family: CodeFamily::Color,
                            sizes: vec![5, 7, 9, 11, 13],
                        },
                    ]
                } else {
                    vec![
                        FamilySizes {
                            family: CodeFamily::Random,
                            sizes: vec![10, 20, 30, 40, 50],
                        },
                        FamilySizes {
                            family: CodeFamily::Css,
                            sizes: vec![12, 24, 36, 48],
                        },
                        FamilySizes {
                            family: CodeFamily::Toric,
                            sizes: vec![3, 4, 5],
                        },
                        FamilySizes {
                            family: CodeFamily::Color,
                            sizes: vec![3, 5],
                        },
                    ]
                };
            }
            Experiment::Ghz => {
                c.n = if paper { vec![4, 6, 30, 60] } else { vec![4, 6, 30] };
                c.k = vec![BlockSpec::Fixed(1), BlockSpec::Fixed(2)];
                c.trials = if paper { 5000 } else { 1000 };
            }
            Experiment::Counts => {
                c.trials = 1;
                c.min_summary_trials = 1;
            }
            Experiment::Learn => {
                c.n = if paper { vec![16, 40, 100] } else { vec![16, 40] };
                c.t = (0..=3).collect();
                c.k = vec![BlockSpec::AUTO];
                c.trials = if paper { 1000 } else { 200 };
            }
        }
        c
    }

    /// The preset for `experiment` with the top-level keys of `file`
    /// replacing the preset's values.
    pub fn resolve(experiment: Experiment, preset: Preset, file: Option<&Path>) -> Result<Self> {
        let base = Self::preset(experiment, preset);
        let Some(path) = file else {
            base.validate()?;
            return Ok(base);
        };
        let text =
            std::fs::read_to_string(path).map_err(|e| HarnessError::config(format!("{}: {e}", path.display())))?;
        let cfg = Self::overlay(base, &text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies a JSON object of overrides.
    pub fn overlay(base: Self, json: &str) -> Result<Self> {
        let patch: Value = serde_json::from_str(json)?;
        let Value::Object(patch) = patch else {
            return Err(HarnessError::config("config must be a JSON object"));
        };
        if let Some(e) = patch.get("experiment") {
            if e != &Value::String(base.experiment.name().into()) {
                return Err(HarnessError::config(format!(
                    "config is for experiment {e}, not {}",
                    base.experiment
                )));
            }
        }
        let mut merged = serde_json::to_value(&base)?;
        let obj = merged.as_object_mut().expect("config serializes to an object");
        for (key, v) in patch {
            obj.insert(key, v);
        }
        Ok(serde_json::from_value(merged)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::config(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        for &n in &self.n {
            if n == 0 || n > CAP_N {
                return bad(format!("n = {n} outside 1..={CAP_N}"));
            }
        }
        let needs_n = !matches!(self.experiment, Experiment::Fig5 | Experiment::Counts);
        if needs_n && self.n.is_empty() {
            return bad("n list is empty".into());
        }
        match self.experiment {
            Experiment::Fig2a | Experiment::Learn => {
                if self.t.is_empty() || self.k.is_empty() {
                    return bad("t and k lists must be nonempty".into());
                }
                for &n in &self.n {
                    for &t in &self.t {
                        if t > n {
                            return bad(format!("t = {t} exceeds n = {n}"));
                        }
                    }
                    for &k in &self.k {
                        k.resolve(n)?;
                    }
                }
                if self.round_cap == 0 {
                    return bad("round_cap must be at least 1".into());
                }
                if self.n_s.contains(&0) {
                    return bad("N_S entries must be positive".into());
                }
            }
            Experiment::Fig2b => {
                for &n in &self.n {
                    if n > FWHT_CAP {
                        return bad(format!("n = {n} exceeds the FWHT cap {FWHT_CAP}"));
                    }
                }
                if self.n_s.is_empty() || self.n_s.contains(&0) {
                    return bad("N_S list must be nonempty and positive".into());
                }
                if self.p_err.is_empty() || self.p_err.iter().any(|p| !(0.0..=0.5).contains(p)) {
                    return bad("p_err entries must lie in [0, 0.5]".into());
                }
                if !(self.alpha > 0.0 && self.alpha < 1.0) {
                    return bad(format!("alpha = {} outside (0, 1)", self.alpha));
                }
            }
            Experiment::Fig5 => {
                if self.families.is_empty() || self.k.is_empty() {
                    return bad("families and k lists must be nonempty".into());
                }
                for f in &self.families {
                    for &s in &f.sizes {
                        let ok = match f.family {
                            CodeFamily::Random => (1..=CAP_N).contains(&s),
                            CodeFamily::Css => (3..=CAP_N).contains(&s),
                            CodeFamily::Toric => (2..=45).contains(&s),
                            CodeFamily::Color => s >= 3 && s % 2 == 1 && s <= 73,
                        };
                        if !ok {
                            return bad(format!("{} size {s} not supported", f.family.name()));
                        }
                    }
                }
                if self.round_cap == 0 {
                    return bad("round_cap must be at least 1".into());
                }
            }
            Experiment::Ghz => {
                if self.k.is_empty() {
                    return bad("k list is empty".into());
                }
                for &n in &self.n {
                    if n < 2 {
                        return bad(format!("GHZ needs n >= 2, got {n}"));
                    }
                    for &k in &self.k {
                        k.resolve(n)?;
                    }
                }
            }
            Experiment::Counts => {}
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
