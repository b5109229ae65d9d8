use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature::Layout;

use super::dataset::LabeledDataset;
use super::standardize::Standardizer;

pub const VARIANCE_FLOOR: f64 = 1e-9;

/// Gaussian naive Bayes with per-class, per-dimension normal densities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    pub(crate) layout: Layout,
    pub(crate) standardizer: Standardizer,
    /// Sorted class labels; the other per-class vectors follow this order.
    pub(crate) classes: Vec<String>,
    pub(crate) priors: Vec<f64>,
    pub(crate) means: Vec<Vec<f64>>,
    pub(crate) variances: Vec<Vec<f64>>,
}

impl NaiveBayesModel {
    /// Priors are class frequencies; means and (population) variances are
    /// the per-class maximum-likelihood estimates, variances floored at
    /// [`VARIANCE_FLOOR`].
    pub fn train(train: &LabeledDataset, standardizer: Standardizer) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::Dataset("cannot train on an empty dataset".into()));
        }
        let classes = train.classes();
        let dim = train.dim();
        let total = train.len() as f64;
        let rows: Vec<(usize, Vec<f64>)> = train
            .samples()
            .iter()
            .map(|s| {
                let class = classes.binary_search(&s.label).expect("label is listed");
                Ok((class, standardizer.transform(&s.features)?))
            })
            .collect::<Result<_>>()?;

        let mut counts = vec![0usize; classes.len()];
        let mut means = vec![vec![0.0; dim]; classes.len()];
        for (c, x) in &rows {
            counts[*c] += 1;
            for (m, v) in means[*c].iter_mut().zip(x) {
                *m += v;
            }
        }
        for (m, &n) in means.iter_mut().zip(&counts) {
            m.iter_mut().for_each(|v| *v /= n as f64);
        }
        let mut variances = vec![vec![0.0; dim]; classes.len()];
        for (c, x) in &rows {
            for ((s, v), m) in variances[*c].iter_mut().zip(x).zip(&means[*c]) {
                *s += (v - m) * (v - m);
            }
        }
        for (var, &n) in variances.iter_mut().zip(&counts) {
            var.iter_mut()
                .for_each(|v| *v = (*v / n as f64).max(VARIANCE_FLOOR));
        }
        Ok(Self {
            layout: train.layout(),
            standardizer,
            classes,
            priors: counts.iter().map(|&n| n as f64 / total).collect(),
            means,
            variances,
        })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// Unnormalized log posterior of every class, in [`Self::classes`] order.
    pub fn log_posteriors(&self, x: &[f64]) -> Result<Vec<f64>> {
        let z = self.standardizer.transform(x)?;
        Ok((0..self.classes.len())
            .map(|c| {
                let log_likelihood: f64 = z
                    .iter()
                    .zip(&self.means[c])
                    .zip(&self.variances[c])
                    .map(|((v, m), var)| {
                        -0.5 * (2.0 * PI * var).ln() - (v - m).powi(2) / (2.0 * var)
                    })
                    .sum();
                self.priors[c].ln() + log_likelihood
            })
            .collect())
    }

    /// Highest posterior class; exact ties go to the first label in sorted order.
    pub fn classify(&self, x: &[f64]) -> Result<String> {
        let scores = self.log_posteriors(x)?;
        let mut best = 0;
        for (c, &s) in scores.iter().enumerate().skip(1) {
            if s > scores[best] {
                best = c;
            }
        }
        Ok(self.classes[best].clone())
    }
}
