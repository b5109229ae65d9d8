use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature::{FeatureVector, Layout};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub features: Vec<f64>,
    pub label: String,
}

/// Feature vectors of one layout paired with class labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    layout: Layout,
    samples: Vec<Sample>,
}

impl LabeledDataset {
    pub fn new(layout: Layout, samples: Vec<Sample>) -> Result<Self> {
        if let Some(bad) = samples.iter().find(|s| s.features.len() != layout.dim()) {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: bad.features.len(),
            });
        }
        Ok(Self { layout, samples })
    }

    pub fn from_vectors(
        pairs: impl IntoIterator<Item = (FeatureVector, String)>,
        layout: Layout,
    ) -> Result<Self> {
        let mut samples = Vec::new();
        for (fv, label) in pairs {
            if fv.layout() != layout {
                return Err(Error::LayoutMismatch {
                    model: layout.to_string(),
                    requested: fv.layout().to_string(),
                });
            }
            samples.push(Sample {
                features: fv.into_values(),
                label,
            });
        }
        Self::new(layout, samples)
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Distinct labels, sorted.
    pub fn classes(&self) -> Vec<String> {
        let mut labels: Vec<String> = self.samples.iter().map(|s| s.label.clone()).collect();
        labels.sort();
        labels.dedup();
        labels
    }

    /// Sample indices grouped by label, each group in dataset order.
    fn indices_by_class(&self) -> BTreeMap<&str, Vec<usize>> {
        let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, s) in self.samples.iter().enumerate() {
            groups.entry(s.label.as_str()).or_default().push(i);
        }
        groups
    }

    fn subset(&self, indices: &[usize]) -> Self {
        Self {
            layout: self.layout,
            samples: indices.iter().map(|&i| self.samples[i].clone()).collect(),
        }
    }
}

/// Training share of a class of `n` samples: `ceil(fraction * n)`, kept in
/// `1..=n-1` so every class lands on both sides.
pub fn train_count(n: usize, fraction: f64) -> usize {
    // the epsilon absorbs products such as 0.14 * 50 = 7.000000000000001
    let raw = (fraction * n as f64 - 1e-9).ceil() as usize;
    raw.clamp(1, n - 1)
}

/// Stratified train/test split. Classes are visited in sorted order and
/// shuffled with one generator seeded from `seed`.
pub fn split(
    ds: &LabeledDataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Parameter(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let groups = ds.indices_by_class();
    if let Some((label, idx)) = groups.iter().find(|(_, idx)| idx.len() < 2) {
        return Err(Error::Dataset(format!(
            "class `{label}` has {} sample(s); a split needs at least 2",
            idx.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (_, mut idx) in groups {
        idx.shuffle(&mut rng);
        let n_train = train_count(idx.len(), train_fraction);
        train.extend_from_slice(&idx[..n_train]);
        test.extend_from_slice(&idx[n_train..]);
    }
    Ok((ds.subset(&train), ds.subset(&test)))
}
