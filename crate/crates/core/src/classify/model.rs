use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::Extraction;
use crate::feature::Layout;

use super::dataset::LabeledDataset;
use super::knn::{check_k, KnnModel};
use super::naive_bayes::NaiveBayesModel;
use super::standardize::Standardizer;

/// Which classifier to train. Parses from `knn<k>` (e.g. `knn3`) or `nb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classifier {
    Knn(usize),
    NaiveBayes,
}

impl Classifier {
    /// Column heading used in report tables.
    pub fn heading(self) -> String {
        match self {
            Classifier::Knn(k) => format!("{k}NN"),
            Classifier::NaiveBayes => "Naive Bayes".to_string(),
        }
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classifier::Knn(k) => write!(f, "knn{k}"),
            Classifier::NaiveBayes => f.write_str("nb"),
        }
    }
}

impl FromStr for Classifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "nb" {
            return Ok(Classifier::NaiveBayes);
        }
        let k = s
            .strip_prefix("knn")
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| Error::Parameter(format!("unknown classifier `{s}`")))?;
        check_k(k)?;
        Ok(Classifier::Knn(k))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TrainedModel {
    Knn(KnnModel),
    NaiveBayes(NaiveBayesModel),
}

impl TrainedModel {
    /// Fits the standardizer on `train` (or uses the identity when
    /// `standardize` is off) and trains the requested classifier.
    pub fn train(
        classifier: Classifier,
        train: &LabeledDataset,
        standardize: bool,
    ) -> Result<Self> {
        let standardizer = if standardize {
            Standardizer::fit(train)?
        } else {
            Standardizer::identity(train.dim())
        };
        Ok(match classifier {
            Classifier::Knn(k) => TrainedModel::Knn(KnnModel::train(train, k, standardizer)?),
            Classifier::NaiveBayes => {
                TrainedModel::NaiveBayes(NaiveBayesModel::train(train, standardizer)?)
            }
        })
    }

    pub fn classifier(&self) -> Classifier {
        match self {
            TrainedModel::Knn(m) => Classifier::Knn(m.k),
            TrainedModel::NaiveBayes(_) => Classifier::NaiveBayes,
        }
    }

    pub fn layout(&self) -> Layout {
        match self {
            TrainedModel::Knn(m) => m.layout,
            TrainedModel::NaiveBayes(m) => m.layout,
        }
    }

    pub fn standardizer(&self) -> &Standardizer {
        match self {
            TrainedModel::Knn(m) => &m.standardizer,
            TrainedModel::NaiveBayes(m) => &m.standardizer,
        }
    }

    pub fn classify(&self, x: &[f64]) -> Result<String> {
        match self {
            TrainedModel::Knn(m) => m.classify(x),
            TrainedModel::NaiveBayes(m) => m.classify(x),
        }
    }

    /// Percentage of `test` samples classified correctly.
    pub fn accuracy(&self, test: &LabeledDataset) -> Result<f64> {
        if test.layout() != self.layout() {
            return Err(Error::LayoutMismatch {
                model: self.layout().to_string(),
                requested: test.layout().to_string(),
            });
        }
        if test.is_empty() {
            return Err(Error::Dataset("empty test set".into()));
        }
        let mut correct = 0usize;
        for s in test.samples() {
            if self.classify(&s.features)? == s.label {
                correct += 1;
            }
        }
        Ok(correct as f64 / test.len() as f64 * 100.0)
    }
}

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// The on-disk model file: a versioned JSON object carrying the trained
/// model, its layout, and the extraction settings that produced its
/// training features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub version: u32,
    #[serde(flatten)]
    pub model: TrainedModel,
    pub extraction: Option<Extraction>,
}

impl ModelDocument {
    pub fn new(model: TrainedModel, extraction: Option<Extraction>) -> Result<Self> {
        if let Some(e) = extraction {
            if e.layout() != model.layout() {
                return Err(Error::LayoutMismatch {
                    model: model.layout().to_string(),
                    requested: e.layout().to_string(),
                });
            }
        }
        Ok(Self {
            version: MODEL_FORMAT_VERSION,
            model,
            extraction,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument =
            serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        if doc.version != MODEL_FORMAT_VERSION {
            return Err(Error::Model(format!(
                "unsupported version {} (expected {MODEL_FORMAT_VERSION})",
                doc.version
            )));
        }
        if let Some(e) = doc.extraction {
            if e.layout() != doc.model.layout() {
                return Err(Error::LayoutMismatch {
                    model: doc.model.layout().to_string(),
                    requested: e.layout().to_string(),
                });
            }
        }
        Ok(doc)
    }
}
