use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature::Layout;

use super::dataset::LabeledDataset;
use super::standardize::Standardizer;

/// K-nearest-neighbor model: the standardized training set itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    pub(crate) k: usize,
    pub(crate) layout: Layout,
    pub(crate) standardizer: Standardizer,
    pub(crate) features: Vec<Vec<f64>>,
    pub(crate) labels: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
struct Neighbor {
    dist: f64,
    index: usize,
}

impl PartialEq for Neighbor {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Neighbor {}

impl PartialOrd for Neighbor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Neighbor {
    // equal distances keep the earlier training sample
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.index.cmp(&other.index))
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::Parameter(format!("k must be odd and >= 1, got {k}")));
    }
    Ok(())
}

impl KnnModel {
    pub fn train(train: &LabeledDataset, k: usize, standardizer: Standardizer) -> Result<Self> {
        check_k(k)?;
        if train.is_empty() {
            return Err(Error::Dataset("cannot train on an empty dataset".into()));
        }
        let features = train
            .samples()
            .iter()
            .map(|s| standardizer.transform(&s.features))
            .collect::<Result<_>>()?;
        Ok(Self {
            k,
            layout: train.layout(),
            standardizer,
            features,
            labels: train.samples().iter().map(|s| s.label.clone()).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Majority label among the `k` nearest neighbors. Label ties go to the
    /// smaller mean neighbor distance, then to the lexicographically
    /// smaller label.
    pub fn classify(&self, x: &[f64]) -> Result<String> {
        let q = self.standardizer.transform(x)?;
        let mut heap = BinaryHeap::with_capacity(self.k + 1);
        for (index, row) in self.features.iter().enumerate() {
            let candidate = Neighbor {
                dist: euclidean(row, &q),
                index,
            };
            if heap.len() < self.k {
                heap.push(candidate);
            } else if heap.peek().is_some_and(|worst| candidate < *worst) {
                heap.pop();
                heap.push(candidate);
            }
        }

        let mut votes: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
        for n in heap.into_sorted_vec() {
            let entry = votes.entry(self.labels[n.index].as_str()).or_default();
            entry.0 += 1;
            entry.1 += n.dist;
        }
        let mut best: Option<(&str, usize, f64)> = None;
        for (label, (count, sum)) in votes {
            let mean = sum / count as f64;
            let better = match best {
                None => true,
                Some((_, c, m)) => count > c || (count == c && mean < m),
            };
            if better {
                best = Some((label, count, mean));
            }
        }
        Ok(best.expect("model has at least one sample").0.to_string())
    }
}
