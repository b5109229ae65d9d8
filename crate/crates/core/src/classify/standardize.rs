use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::dataset::LabeledDataset;

pub const STD_FLOOR: f64 = 1e-9;

/// Per-dimension z-scoring fitted on training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    means: Vec<f64>,
    stds: Vec<f64>,
}

impl Standardizer {
    /// Population mean and standard deviation of each dimension, with the
    /// deviation floored at [`STD_FLOOR`].
    pub fn fit(ds: &LabeledDataset) -> Result<Self> {
        if ds.is_empty() {
            return Err(Error::Dataset("cannot standardize an empty dataset".into()));
        }
        let n = ds.len() as f64;
        let dim = ds.dim();
        let mut means = vec![0.0; dim];
        for s in ds.samples() {
            for (m, x) in means.iter_mut().zip(&s.features) {
                *m += x;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut vars = vec![0.0; dim];
        for s in ds.samples() {
            for ((v, m), x) in vars.iter_mut().zip(&means).zip(&s.features) {
                *v += (x - m) * (x - m);
            }
        }
        let stds = vars.iter().map(|v| (v / n).sqrt().max(STD_FLOOR)).collect();
        Ok(Self { means, stds })
    }

    /// Leaves features unchanged.
    pub fn identity(dim: usize) -> Self {
        Self {
            means: vec![0.0; dim],
            stds: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn stds(&self) -> &[f64] {
        &self.stds
    }

    pub fn transform(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(x.iter()
            .zip(&self.means)
            .zip(&self.stds)
            .map(|((x, m), s)| (x - m) / s)
            .collect())
    }
}
