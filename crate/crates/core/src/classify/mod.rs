//! Datasets, standardization, KNN and Gaussian naive Bayes classifiers,
//! and the repeated-split evaluation harness.

mod dataset;
mod eval;
mod knn;
mod model;
mod naive_bayes;
mod standardize;

pub use dataset::{split, train_count, LabeledDataset, Sample};
pub use eval::{evaluate, mean_and_std, EvalCell, EvalConfig, EvalReport};
pub use knn::{euclidean, KnnModel};
pub use model::{Classifier, ModelDocument, TrainedModel, MODEL_FORMAT_VERSION};
pub use naive_bayes::{NaiveBayesModel, VARIANCE_FLOOR};
pub use standardize::{Standardizer, STD_FLOOR};
