//! Pixel containers shared by every stage of the pipeline.

use crate::error::{Error, Result};

/// An 8-bit raster with one (gray) or three (RGB) interleaved channels,
/// stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RasterImage {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl RasterImage {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Geometry(format!("{width}x{height} has no pixels")));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::Geometry(format!(
                "{channels} channels; only 1 or 3 are supported"
            )));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| Error::Geometry("dimensions overflow".into()))?;
        if data.len() != expected {
            return Err(Error::Geometry(format!(
                "{width}x{height}x{channels} needs {expected} samples, got {}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn gray(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        Self::new(width, height, 1, data)
    }

    pub fn rgb(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        Self::new(width, height, 3, data)
    }

    /// Builds a gray image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn_gray(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::gray(width, height, data)
    }

    /// Builds an RGB image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn_rgb(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self::rgb(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    /// Samples of the pixel at `(x, y)`; one element for gray, three for RGB.
    pub fn pixel(&self, x: usize, y: usize) -> &[u8] {
        let start = (y * self.width + x) * self.channels;
        &self.data[start..start + self.channels]
    }

    pub(crate) fn expect_channels(&self, expected: usize) -> Result<()> {
        if self.channels == expected {
            Ok(())
        } else {
            Err(Error::ChannelCount {
                expected,
                found: self.channels,
            })
        }
    }
}

/// Thresholded image: `true` marks a grain pixel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    grains: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, grains: Vec<bool>) -> Result<Self> {
        if grains.len() != width * height {
            return Err(Error::Geometry(format!(
                "{width}x{height} binary image needs {} cells, got {}",
                width * height,
                grains.len()
            )));
        }
        Ok(Self {
            width,
            height,
            grains,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn grains(&self) -> &[bool] {
        &self.grains
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.grains[y * self.width + x]
    }

    pub fn grain_count(&self) -> usize {
        self.grains.iter().filter(|&&g| g).count()
    }
}

/// 256-bin histogram of 8-bit intensities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntensityHistogram {
    counts: [u64; 256],
    total: u64,
}

impl IntensityHistogram {
    pub fn from_counts(counts: [u64; 256]) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    /// Histogram of a single-channel image.
    pub fn of_image(img: &RasterImage) -> Result<Self> {
        img.expect_channels(1)?;
        let mut counts = [0u64; 256];
        for &v in img.data() {
            counts[v as usize] += 1;
        }
        Ok(Self {
            counts,
            total: img.pixel_count() as u64,
        })
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}
