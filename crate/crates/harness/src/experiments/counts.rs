//! Counting formulas against brute-force oracles.

use serde::Serialize;
use stabscope_core::counting::report::verification_report;

use crate::error::Result;
use crate::output::{to_csv, RunOutput, Summary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountsRow {
    pub formula: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: u8,
}

pub fn rows() -> Result<Vec<CountsRow>> {
    Ok(verification_report()?
        .into_iter()
        .map(|r| CountsRow {
            formula: r.formula,
            params: r.params,
            expected: r.expected,
            actual: r.actual,
            pass: r.pass as u8,
        })
        .collect())
}

pub fn run(min_summary_trials: usize) -> Result<RunOutput> {
    let rows = rows()?;
    let mut s = Summary::new("counts");
    for r in &rows {
        s.add(&r.formula, "pass", Some(r.pass as f64));
    }
    Ok(RunOutput {
        files: vec![("counts.csv".into(), to_csv(&rows)?)],
        summary: s.rows(min_summary_trials),
    })
}
