//! Primitive pattern units: grain counting over non-overlapping masks,
//! grain-component histograms and their statistical feature vectors.
//!
//! A window contributes grain count `g = 0` when its center pixel is not a
//! grain. Otherwise `g` is the number of grain pixels among the other
//! `k*k - 1` cells, so a saturated 3x3 window has `g = 8`. A grain center
//! with no grain neighbors also lands in bin 0, which keeps the histogram
//! at exactly `k*k` bins.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature::{FeatureVector, Layout};
use crate::imageproc::{
    binarize, equalize_histogram, otsu_threshold, split_channels, to_grayscale,
};
use crate::raster::{BinaryImage, IntensityHistogram, RasterImage};

/// Side length of a square, odd, non-overlapping mask (3 by default).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct MaskSize(usize);

impl MaskSize {
    pub const DEFAULT: MaskSize = MaskSize(3);

    pub fn new(side: usize) -> Result<Self> {
        if side >= 3 && side % 2 == 1 {
            Ok(Self(side))
        } else {
            Err(Error::InvalidMaskSize(side))
        }
    }

    pub fn side(self) -> usize {
        self.0
    }

    /// Number of histogram bins, `k*k` (grain counts `0..=k*k-1`).
    pub fn bins(self) -> usize {
        self.0 * self.0
    }

    /// Largest grain count a window can hold.
    pub fn max_grains(self) -> usize {
        self.bins() - 1
    }
}

impl Default for MaskSize {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl TryFrom<usize> for MaskSize {
    type Error = Error;

    fn try_from(side: usize) -> Result<Self> {
        Self::new(side)
    }
}

impl From<MaskSize> for usize {
    fn from(m: MaskSize) -> usize {
        m.0
    }
}

/// Grain count of one row-major `k x k` window.
pub fn count_grains(window: &[bool]) -> Result<usize> {
    let side = (window.len() as f64).sqrt().round() as usize;
    if side * side != window.len() || side < 3 || side.is_multiple_of(2) {
        return Err(Error::InvalidWindow(window.len()));
    }
    let center = window.len() / 2;
    if !window[center] {
        return Ok(0);
    }
    Ok(window.iter().filter(|&&g| g).count() - 1)
}

/// Counts `N(g)` over the complete non-overlapping windows of an image,
/// plus the window total `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrainHistogram {
    mask: MaskSize,
    counts: Vec<u64>,
    window_total: u64,
}

impl GrainHistogram {
    /// Wraps raw counts, e.g. a row copied from a published table.
    pub fn from_counts(mask: MaskSize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != mask.bins() {
            return Err(Error::DimensionMismatch {
                expected: mask.bins(),
                found: counts.len(),
            });
        }
        let window_total = counts.iter().sum();
        Ok(Self {
            mask,
            counts,
            window_total,
        })
    }

    pub fn mask(&self) -> MaskSize {
        self.mask
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn window_total(&self) -> u64 {
        self.window_total
    }
}

/// Tiles `bin` with `k x k` windows anchored at the top-left corner and
/// histograms their grain counts. Partial windows on the right and bottom
/// edges are dropped.
pub fn grain_histogram(bin: &BinaryImage, mask: MaskSize) -> Result<GrainHistogram> {
    let k = mask.side();
    let (w, h) = (bin.width(), bin.height());
    if w < k || h < k {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min: k,
        });
    }
    let grains = bin.grains();
    let half = k / 2;
    let mut counts = vec![0u64; mask.bins()];
    for top in (0..=h - k).step_by(k) {
        for left in (0..=w - k).step_by(k) {
            if !grains[(top + half) * w + left + half] {
                counts[0] += 1;
                continue;
            }
            let mut set = 0usize;
            for row in top..top + k {
                let start = row * w + left;
                set += grains[start..start + k].iter().filter(|&&g| g).count();
            }
            counts[set - 1] += 1;
        }
    }
    let window_total = ((h / k) * (w / k)) as u64;
    debug_assert_eq!(window_total, counts.iter().sum::<u64>());
    Ok(GrainHistogram {
        mask,
        counts,
        window_total,
    })
}

/// The normalized grain histogram `P(g) = N(g) / M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrainDistribution {
    mask: MaskSize,
    probs: Vec<f64>,
}

impl GrainDistribution {
    /// Accepts any non-negative vector of `k*k` probabilities summing to 1.
    pub fn from_probs(mask: MaskSize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != mask.bins() {
            return Err(Error::DimensionMismatch {
                expected: mask.bins(),
                found: probs.len(),
            });
        }
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Parameter(format!(
                "not a probability distribution (sum {sum})"
            )));
        }
        Ok(Self { mask, probs })
    }

    pub fn mask(&self) -> MaskSize {
        self.mask
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

pub fn normalize(hist: &GrainHistogram) -> Result<GrainDistribution> {
    if hist.window_total == 0 {
        return Err(Error::EmptyGrainHistogram);
    }
    let m = hist.window_total as f64;
    Ok(GrainDistribution {
        mask: hist.mask,
        probs: hist.counts.iter().map(|&n| n as f64 / m).collect(),
    })
}

/// Grain statistics in feature order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrainStats {
    pub energy: f64,
    pub entropy: f64,
    pub mean: f64,
    /// Square root of the second central moment. The dimension keeps the
    /// name "variance" used throughout the feature layout.
    pub variance: f64,
}

impl GrainStats {
    pub fn of(dist: &GrainDistribution) -> Self {
        let p = dist.probs();
        let mean: f64 = p.iter().enumerate().map(|(g, &pg)| g as f64 * pg).sum();
        let second: f64 = p
            .iter()
            .enumerate()
            .map(|(g, &pg)| (g as f64 - mean).powi(2) * pg)
            .sum();
        let energy = p.iter().map(|pg| pg * pg).sum();
        // 0 log 0 = 0
        let entropy = -p
            .iter()
            .filter(|&&pg| pg > 0.0)
            .map(|&pg| pg * pg.log2())
            .sum::<f64>();
        Self {
            energy,
            // no negative zero for point masses
            entropy: if entropy > 0.0 { entropy } else { 0.0 },
            mean,
            variance: second.sqrt(),
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.energy, self.entropy, self.mean, self.variance]
    }
}

/// The 4-dim gray feature vector `<energy, entropy, mean, variance>`.
pub fn features(dist: &GrainDistribution) -> FeatureVector {
    FeatureVector::new(Layout::PpuGray, GrainStats::of(dist).to_array().to_vec())
        .expect("gray layout has four dimensions")
}

/// Settings shared by the gray and color pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PpuConfig {
    pub mask: MaskSize,
    pub equalize: bool,
}

/// Equalize (optionally), threshold with Otsu and histogram one gray plane.
pub fn plane_histogram(plane: &RasterImage, config: PpuConfig) -> Result<GrainHistogram> {
    plane.expect_channels(1)?;
    let equalized;
    let plane = if config.equalize {
        equalized = equalize_histogram(plane)?;
        &equalized
    } else {
        plane
    };
    let t = otsu_threshold(&IntensityHistogram::of_image(plane)?)?;
    grain_histogram(&binarize(plane, t)?, config.mask)
}

fn plane_stats(plane: &RasterImage, config: PpuConfig) -> Result<GrainStats> {
    Ok(GrainStats::of(&normalize(&plane_histogram(
        plane, config,
    )?)?))
}

/// Gray pipeline; RGB input is converted to luma first.
pub fn gray_pipeline(img: &RasterImage, config: PpuConfig) -> Result<FeatureVector> {
    let converted;
    let plane = if img.channels() == 3 {
        converted = to_grayscale(img)?;
        &converted
    } else {
        img
    };
    FeatureVector::new(
        Layout::PpuGray,
        plane_stats(plane, config)?.to_array().to_vec(),
    )
}

/// Per-channel grain histograms `[R, G, B]`, each with its own threshold.
pub fn channel_histograms(img: &RasterImage, config: PpuConfig) -> Result<[GrainHistogram; 3]> {
    let [r, g, b] = split_channels(img)?;
    Ok([
        plane_histogram(&r, config)?,
        plane_histogram(&g, config)?,
        plane_histogram(&b, config)?,
    ])
}

/// Color pipeline: the gray tail applied to R, G and B independently,
/// concatenated as `<F_red, F_green, F_blue>`.
pub fn color_pipeline(img: &RasterImage, config: PpuConfig) -> Result<FeatureVector> {
    img.expect_channels(3)?;
    let mut values = Vec::with_capacity(12);
    for hist in channel_histograms(img, config)? {
        values.extend(GrainStats::of(&normalize(&hist)?).to_array());
    }
    FeatureVector::new(Layout::PpuColor, values)
}
