//! Repeated stratified hold-out evaluation.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::dataset::{split, LabeledDataset};
use super::model::{Classifier, TrainedModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub splits: usize,
    pub train_fraction: f64,
    pub seed: u64,
    pub standardize: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            splits: 10,
            train_fraction: 0.65,
            seed: 42,
            standardize: true,
        }
    }
}

/// Accuracy of one classifier on one feature method, over all runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalCell {
    pub method: String,
    pub classifier: String,
    /// Mean test accuracy in percent.
    pub mean: f64,
    /// Population standard deviation of the per-run accuracies.
    pub std: f64,
    pub accuracies: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub seed: u64,
    pub splits: usize,
    pub train_fraction: f64,
    pub standardize: bool,
    pub methods: Vec<String>,
    pub classifiers: Vec<String>,
    /// Method-major: all classifiers of the first method come first.
    pub cells: Vec<EvalCell>,
}

impl EvalReport {
    pub fn cell(&self, method: &str, classifier: &str) -> Option<&EvalCell> {
        self.cells
            .iter()
            .find(|c| c.method == method && c.classifier == classifier)
    }

    /// One row per method, one `mean ± std` cell per classifier.
    pub fn render_table(&self) -> String {
        let headings: Vec<String> = self
            .classifiers
            .iter()
            .map(|c| {
                c.parse::<Classifier>()
                    .map_or_else(|_| c.clone(), |c| c.heading())
            })
            .collect();
        let rows: Vec<Vec<String>> = self
            .methods
            .iter()
            .map(|m| {
                let mut row = vec![m.clone()];
                for c in &self.classifiers {
                    row.push(match self.cell(m, c) {
                        Some(cell) => format!("{:.2} ± {:.2}", cell.mean, cell.std),
                        None => "-".into(),
                    });
                }
                row
            })
            .collect();
        let header: Vec<String> = std::iter::once("Method".to_string())
            .chain(headings)
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                rows.iter()
                    .map(|r| r[i].chars().count())
                    .chain([header[i].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();

        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&header);
        line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
        for r in &rows {
            line(r);
        }
        out
    }
}

pub fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Runs `config.splits` stratified splits (run `i` uses seed `seed + i`,
/// `i = 1..=splits`) and trains every classifier on every named dataset.
/// All datasets must list their samples in the same order, so that a
/// given seed selects the same images for every method.
pub fn evaluate(
    datasets: &[(String, LabeledDataset)],
    classifiers: &[Classifier],
    config: EvalConfig,
) -> Result<EvalReport> {
    if config.splits == 0 {
        return Err(Error::Parameter("at least one split is required".into()));
    }
    if datasets.is_empty() || classifiers.is_empty() {
        return Err(Error::Parameter(
            "need at least one feature method and one classifier".into(),
        ));
    }

    // runs x methods x classifiers
    let per_run: Vec<Vec<Vec<f64>>> = (1..=config.splits as u64)
        .into_par_iter()
        .map(|i| {
            let seed = config.seed.wrapping_add(i);
            datasets
                .iter()
                .map(|(name, ds)| {
                    let (train, test) = split(ds, config.train_fraction, seed)
                        .map_err(|e| e.context(format!("method {name}, split seed {seed}")))?;
                    classifiers
                        .iter()
                        .map(|&c| {
                            TrainedModel::train(c, &train, config.standardize)
                                .and_then(|m| m.accuracy(&test))
                                .map_err(|e| e.context(format!("method {name}, classifier {c}")))
                        })
                        .collect::<Result<Vec<f64>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut cells = Vec::with_capacity(datasets.len() * classifiers.len());
    for (mi, (name, _)) in datasets.iter().enumerate() {
        for (ci, c) in classifiers.iter().enumerate() {
            let accuracies: Vec<f64> = per_run.iter().map(|run| run[mi][ci]).collect();
            let (mean, std) = mean_and_std(&accuracies);
            cells.push(EvalCell {
                method: name.clone(),
                classifier: c.to_string(),
                mean,
                std,
                accuracies,
            });
        }
    }
    Ok(EvalReport {
        seed: config.seed,
        splits: config.splits,
        train_fraction: config.train_fraction,
        standardize: config.standardize,
        methods: datasets.iter().map(|(n, _)| n.clone()).collect(),
        classifiers: classifiers.iter().map(|c| c.to_string()).collect(),
        cells,
    })
}
