//! Extraction settings tying an image to one feature layout.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::{glcm_features, lbp_features, DEFAULT_GLCM_LEVELS};
use crate::error::{Error, Result};
use crate::feature::{FeatureVector, Layout};
use crate::imageproc::{equalize_histogram, gray_to_rgb, to_grayscale};
use crate::ppu::{color_pipeline, gray_pipeline, MaskSize, PpuConfig};
use crate::raster::RasterImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Ppu,
    Lbp,
    Glcm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ppu => "ppu",
            Method::Lbp => "lbp",
            Method::Glcm => "glcm",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ppu" => Ok(Method::Ppu),
            "lbp" => Ok(Method::Lbp),
            "glcm" => Ok(Method::Glcm),
            other => Err(Error::Parameter(format!(
                "unknown feature method `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColorMode {
    Color,
    Gray,
}

/// Everything needed to turn an image into a feature vector. The color
/// mode only applies to PPU features; LBP and GLCM always run on luma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub method: Method,
    pub color: ColorMode,
    pub mask: MaskSize,
    pub equalize: bool,
    pub glcm_levels: usize,
}

impl Default for Extraction {
    fn default() -> Self {
        Self {
            method: Method::Ppu,
            color: ColorMode::Color,
            mask: MaskSize::DEFAULT,
            equalize: false,
            glcm_levels: DEFAULT_GLCM_LEVELS,
        }
    }
}

impl Extraction {
    pub fn new(method: Method, color: ColorMode, mask: MaskSize, equalize: bool) -> Self {
        let color = if method == Method::Ppu {
            color
        } else {
            ColorMode::Gray
        };
        Self {
            method,
            color,
            mask,
            equalize,
            glcm_levels: DEFAULT_GLCM_LEVELS,
        }
    }

    pub fn layout(&self) -> Layout {
        match (self.method, self.color) {
            (Method::Ppu, ColorMode::Color) => Layout::PpuColor,
            (Method::Ppu, ColorMode::Gray) => Layout::PpuGray,
            (Method::Lbp, _) => Layout::Lbp,
            (Method::Glcm, _) => Layout::Glcm,
        }
    }

    fn ppu_config(&self) -> PpuConfig {
        PpuConfig {
            mask: self.mask,
            equalize: self.equalize,
        }
    }

    pub fn extract(&self, img: &RasterImage) -> Result<FeatureVector> {
        match (self.method, self.color) {
            (Method::Ppu, ColorMode::Color) => {
                if img.channels() == 1 {
                    color_pipeline(&gray_to_rgb(img)?, self.ppu_config())
                } else {
                    color_pipeline(img, self.ppu_config())
                }
            }
            (Method::Ppu, ColorMode::Gray) => gray_pipeline(img, self.ppu_config()),
            (method, _) => {
                let mut gray = if img.channels() == 3 {
                    to_grayscale(img)?
                } else {
                    img.clone()
                };
                if self.equalize {
                    gray = equalize_histogram(&gray)?;
                }
                match method {
                    Method::Lbp => lbp_features(&gray),
                    _ => glcm_features(&gray, self.glcm_levels),
                }
            }
        }
    }

    /// Extracts every image in parallel; results keep the input order.
    pub fn extract_all(&self, images: &[RasterImage]) -> Vec<Result<FeatureVector>> {
        images.par_iter().map(|img| self.extract(img)).collect()
    }
}
