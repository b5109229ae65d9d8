//! Texture features built from grain-component ("primitive pattern unit")
//! histograms, with LBP and GLCM baselines and small classifiers to compare
//! them.
//!
//! The PPU pipeline for one gray plane is: optional histogram equalization,
//! Otsu threshold, binarization, grain counting over non-overlapping `k x k`
//! masks, normalization, and the four statistics
//! `<energy, entropy, mean, variance>`. Color images run the same tail on
//! each of R, G and B and concatenate the three blocks.

pub mod baseline;
pub mod classify;
pub mod error;
pub mod extract;
pub mod feature;
pub mod imageproc;
pub mod io;
pub mod ppu;
pub mod raster;
pub mod synth;

pub use error::{Error, Result};
pub use extract::{ColorMode, Extraction, Method};
pub use feature::{FeatureVector, Layout};
pub use ppu::{GrainDistribution, GrainHistogram, MaskSize, PpuConfig};
pub use raster::{BinaryImage, IntensityHistogram, RasterImage};
