use std::path::Path;
use std::process::Command;

use stabscope::{Experiment, ExperimentConfig, Preset};

const ALL: [Experiment; 6] = [
    Experiment::Fig2a,
    Experiment::Fig2b,
    Experiment::Fig5,
    Experiment::Ghz,
    Experiment::Counts,
    Experiment::Learn,
];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stabscope"))
}

#[test]
fn checked_in_configs_match_presets() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for (dir, preset) in [("desk", Preset::Desk), ("paper", Preset::Paper)] {
        for e in ALL {
            let path = root.join(dir).join(format!("{}.json", e.name()));
            let from_file = ExperimentConfig::resolve(e, Preset::Desk, Some(&path)).unwrap();
            assert_eq!(from_file, ExperimentConfig::preset(e, preset), "{}", path.display());
        }
    }
}

#[test]
fn run_writes_tables_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["ghz", "--trials", "5", "--seed", "9", "--workers", "2", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    for f in ["ghz.csv", "summary.csv", "config.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let cfg = std::fs::read_to_string(dir.path().join("config.json")).unwrap();
    let cfg = ExperimentConfig::overlay(ExperimentConfig::preset(Experiment::Ghz, Preset::Desk), &cfg).unwrap();
    assert_eq!((cfg.trials, cfg.master_seed), (5, 9));
    let header = std::fs::read_to_string(dir.path().join("ghz.csv")).unwrap();
    assert!(header.starts_with("n,k,trial,seed,hit,adaptive_success"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"experiment": "fig2a", "trials": 0}"#).unwrap();
    let out = bin().args(["fig2a", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let mismatched = dir.path().join("other.json");
    std::fs::write(&mismatched, r#"{"experiment": "ghz"}"#).unwrap();
    let out = bin().args(["fig2a", "--config"]).arg(&mismatched).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["fig2a", "--config", "/nonexistent/x.json"])
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
}
