//! Comparison descriptors: the basic 8-neighbor local binary pattern and
//! gray-level co-occurrence (Haralick) features.

use crate::error::{Error, Result};
use crate::feature::{FeatureVector, Layout};
use crate::raster::RasterImage;

pub const DEFAULT_GLCM_LEVELS: usize = 16;

/// Co-occurrence offsets as `(row, column)` steps, in feature order.
pub const GLCM_OFFSETS: [(isize, isize); 4] = [(0, 1), (1, 0), (1, 1), (1, -1)];

// Clockwise from the top-left neighbor; the first neighbor is the most
// significant bit of the code.
const LBP_NEIGHBORS: [(isize, isize); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
];

/// LBP code of the interior pixel `(x, y)`: a bit is set when the
/// neighbor is at least as bright as the center.
pub fn lbp_code(img: &RasterImage, x: usize, y: usize) -> u8 {
    let w = img.width();
    let data = img.data();
    let center = data[y * w + x];
    LBP_NEIGHBORS.iter().fold(0u8, |code, &(dy, dx)| {
        let ny = (y as isize + dy) as usize;
        let nx = (x as isize + dx) as usize;
        (code << 1) | (data[ny * w + nx] >= center) as u8
    })
}

/// Normalized 256-bin histogram of LBP codes over all interior pixels.
pub fn lbp_features(img: &RasterImage) -> Result<FeatureVector> {
    img.expect_channels(1)?;
    let (w, h) = (img.width(), img.height());
    if w < 3 || h < 3 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min: 3,
        });
    }
    let mut counts = [0u64; 256];
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            counts[lbp_code(img, x, y) as usize] += 1;
        }
    }
    let total = ((w - 2) * (h - 2)) as f64;
    FeatureVector::new(
        Layout::Lbp,
        counts.iter().map(|&c| c as f64 / total).collect(),
    )
}

/// Symmetric, normalized co-occurrence matrix over `levels` gray levels.
#[derive(Debug, Clone, PartialEq)]
pub struct GlcmMatrix {
    levels: usize,
    cells: Vec<f64>,
}

impl GlcmMatrix {
    /// Builds the matrix for one `(row, column)` offset after quantizing
    /// intensities to `floor(v * levels / 256)`.
    pub fn build(img: &RasterImage, levels: usize, offset: (isize, isize)) -> Result<Self> {
        img.expect_channels(1)?;
        if !(2..=256).contains(&levels) {
            return Err(Error::Parameter(format!(
                "GLCM levels must be in 2..=256, got {levels}"
            )));
        }
        let (w, h) = (img.width(), img.height());
        let (dr, dc) = offset;
        let quant: Vec<usize> = img
            .data()
            .iter()
            .map(|&v| v as usize * levels / 256)
            .collect();

        let mut counts = vec![0u64; levels * levels];
        let rows = 0..h.saturating_sub(dr.unsigned_abs());
        let (c0, c1) = if dc >= 0 {
            (0, w.saturating_sub(dc as usize))
        } else {
            (dc.unsigned_abs().min(w), w)
        };
        let mut pairs = 0u64;
        for r in rows {
            let nr = (r as isize + dr) as usize;
            for c in c0..c1 {
                let nc = (c as isize + dc) as usize;
                let a = quant[r * w + c];
                let b = quant[nr * w + nc];
                counts[a * levels + b] += 1;
                counts[b * levels + a] += 1;
                pairs += 1;
            }
        }
        if pairs == 0 {
            return Err(Error::DegenerateOffset {
                dr,
                dc,
                width: w,
                height: h,
            });
        }
        let total = (2 * pairs) as f64;
        Ok(Self {
            levels,
            cells: counts.iter().map(|&c| c as f64 / total).collect(),
        })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.levels + j]
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    /// `[contrast, energy, homogeneity, correlation]`.
    pub fn haralick(&self) -> [f64; 4] {
        let q = self.levels;
        let mut contrast = 0.0;
        let mut energy = 0.0;
        let mut homogeneity = 0.0;
        let mut mu_i = 0.0;
        let mut mu_j = 0.0;
        for i in 0..q {
            for j in 0..q {
                let p = self.get(i, j);
                let d = i as f64 - j as f64;
                contrast += d * d * p;
                energy += p * p;
                homogeneity += p / (1.0 + d * d);
                mu_i += i as f64 * p;
                mu_j += j as f64 * p;
            }
        }
        let mut var_i = 0.0;
        let mut var_j = 0.0;
        let mut cov = 0.0;
        for i in 0..q {
            for j in 0..q {
                let p = self.get(i, j);
                let di = i as f64 - mu_i;
                let dj = j as f64 - mu_j;
                var_i += di * di * p;
                var_j += dj * dj * p;
                cov += di * dj * p;
            }
        }
        let (sd_i, sd_j) = (var_i.sqrt(), var_j.sqrt());
        let correlation = if sd_i == 0.0 || sd_j == 0.0 {
            0.0
        } else {
            cov / (sd_i * sd_j)
        };
        [contrast, energy, homogeneity, correlation]
    }
}

/// Haralick features for the four offsets, offset-major (16 dims).
pub fn glcm_features(img: &RasterImage, levels: usize) -> Result<FeatureVector> {
    let mut values = Vec::with_capacity(16);
    for offset in GLCM_OFFSETS {
        values.extend(GlcmMatrix::build(img, levels, offset)?.haralick());
    }
    FeatureVector::new(Layout::Glcm, values)
}
