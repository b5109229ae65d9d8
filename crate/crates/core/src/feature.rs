//! Named feature vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The dimension layout of a feature vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    /// `<energy, entropy, mean, variance>` of one grain histogram.
    PpuGray,
    /// The gray block repeated for the R, G and B channels.
    PpuColor,
    /// 256-bin normalized LBP code histogram.
    Lbp,
    /// Contrast, energy, homogeneity and correlation for four offsets.
    Glcm,
}

pub const PPU_STATS: [&str; 4] = ["energy", "entropy", "mean", "variance"];
pub const GLCM_STATS: [&str; 4] = ["contrast", "energy", "homogeneity", "correlation"];
/// Suffixes for the co-occurrence offsets (0,1), (1,0), (1,1), (1,-1).
pub const GLCM_OFFSET_NAMES: [&str; 4] = ["e", "s", "se", "sw"];

impl Layout {
    pub const ALL: [Layout; 4] = [Layout::PpuGray, Layout::PpuColor, Layout::Lbp, Layout::Glcm];

    pub fn dim(self) -> usize {
        match self {
            Layout::PpuGray => 4,
            Layout::PpuColor => 12,
            Layout::Lbp => 256,
            Layout::Glcm => 16,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Layout::PpuGray => "ppu-gray",
            Layout::PpuColor => "ppu-color",
            Layout::Lbp => "lbp",
            Layout::Glcm => "glcm",
        }
    }

    pub fn dimension_names(self) -> Vec<String> {
        match self {
            Layout::PpuGray => PPU_STATS.iter().map(|s| s.to_string()).collect(),
            Layout::PpuColor => ["r", "g", "b"]
                .iter()
                .flat_map(|c| PPU_STATS.iter().map(move |s| format!("{s}_{c}")))
                .collect(),
            Layout::Lbp => (0..256).map(|i| format!("lbp_{i:03}")).collect(),
            Layout::Glcm => GLCM_OFFSET_NAMES
                .iter()
                .flat_map(|o| GLCM_STATS.iter().map(move |s| format!("{s}_{o}")))
                .collect(),
        }
    }

    /// Recovers the layout from a list of dimension names.
    pub fn from_dimension_names<S: AsRef<str>>(names: &[S]) -> Option<Layout> {
        Layout::ALL.into_iter().find(|l| {
            let expected = l.dimension_names();
            expected.len() == names.len()
                && expected.iter().zip(names).all(|(e, n)| e == n.as_ref())
        })
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Layout::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown feature layout `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    layout: Layout,
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn new(layout: Layout, values: Vec<f64>) -> Result<Self> {
        if values.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: values.len(),
            });
        }
        Ok(Self { layout, values })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
