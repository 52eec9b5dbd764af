//! CSV tables and per-group summary statistics.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

/// One line of `summary.csv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub experiment: String,
    pub point: String,
    pub metric: String,
    pub count: usize,
    /// Trials without a value (for example, rounds that hit the cap).
    pub missing: usize,
    pub mean: f64,
    pub std: f64,
}

/// Accumulates metric values per `(point, metric)` in first-seen order.
#[derive(Default)]
pub struct Summary {
    experiment: String,
    order: Vec<(String, String)>,
    values: BTreeMap<(String, String), (Vec<f64>, usize)>,
}

impl Summary {
    pub fn new(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            ..Default::default()
        }
    }

    pub fn add(&mut self, point: &str, metric: &str, value: Option<f64>) {
        let key = (point.to_string(), metric.to_string());
        let entry = self.values.entry(key.clone()).or_insert_with(|| {
            self.order.push(key);
            (Vec::new(), 0)
        });
        match value {
            Some(v) => entry.0.push(v),
            None => entry.1 += 1,
        }
    }

    /// Rows for groups with at least `min_trials` trials.
    pub fn rows(&self, min_trials: usize) -> Vec<SummaryRow> {
        self.order
            .iter()
            .filter_map(|key| {
                let (vals, missing) = &self.values[key];
                if vals.len() + missing < min_trials {
                    return None;
                }
                let (mean, std) = mean_std(vals);
                Some(SummaryRow {
                    experiment: self.experiment.clone(),
                    point: key.0.clone(),
                    metric: key.1.clone(),
                    count: vals.len(),
                    missing: *missing,
                    mean,
                    std,
                })
            })
            .collect()
    }
}

/// Mean and sample standard deviation; `(NaN, NaN)` when empty.
pub fn mean_std(v: &[f64]) -> (f64, f64) {
    if v.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

/// Like [`to_csv`] but writes the header even with no rows.
pub fn to_csv_with_header<T: Serialize>(header: &[&str], rows: &[T]) -> Result<Vec<u8>> {
    if !rows.is_empty() {
        return to_csv(rows);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

/// Named CSV files produced by one run.
#[derive(Clone, Debug, Default)]
pub struct RunOutput {
    pub files: Vec<(String, Vec<u8>)>,
    pub summary: Vec<SummaryRow>,
}

impl RunOutput {
    pub fn file(&self, name: &str) -> Option<&[u8]> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, b)| b.as_slice())
    }

    /// Writes every file plus `summary.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (name, bytes) in &self.files {
            fs::write(dir.join(name), bytes)?;
        }
        fs::write(
            dir.join("summary.csv"),
            to_csv_with_header(
                &["experiment", "point", "metric", "count", "missing", "mean", "std"],
                &self.summary,
            )?,
        )?;
        Ok(())
    }
}
