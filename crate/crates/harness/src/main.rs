use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use stabscope::{run, Experiment, ExperimentConfig, HarnessError, Preset};

/// Reproduces the learning experiments and writes CSV tables.
#[derive(Debug, Parser)]
#[command(name = "stabscope", version)]
struct Cli {
    experiment: Experiment,
    /// JSON document overriding preset values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Output directory; defaults to the config's `output`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Preset::Desk)]
    preset: Preset,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    workers: Option<usize>,
    /// Print the resolved config as JSON and exit.
    #[arg(long)]
    print_config: bool,
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    let mut cfg = ExperimentConfig::resolve(cli.experiment, cli.preset, cli.config.as_deref())?;
    if let Some(s) = cli.seed {
        cfg.master_seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
        if cfg.experiment == Experiment::Fig2b {
            cfg.null_trials = t;
        }
    }
    if let Some(o) = cli.out {
        cfg.output = o;
    }
    cfg.validate()?;
    if cli.print_config {
        println!("{}", cfg.to_json()?);
        return Ok(());
    }
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    let out = run(&cfg, workers)?;
    out.write(&cfg.output)?;
    std::fs::write(cfg.output.join("config.json"), cfg.to_json()?)?;
    for r in &out.summary {
        println!(
            "{:<40} {:<16} n={:<5} mean={:.4} std={:.4}",
            r.point, r.metric, r.count, r.mean, r.std
        );
    }
    println!("wrote {}", cfg.output.display());
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stabscope: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
