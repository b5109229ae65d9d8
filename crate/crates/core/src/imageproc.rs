//! Everything upstream of grain counting: gray conversion, channel
//! splitting, histogram equalization, Otsu thresholding and binarization.

use crate::error::{Error, Result};
use crate::raster::{BinaryImage, IntensityHistogram, RasterImage};

/// BT.601 luma, `round(0.299 R + 0.587 G + 0.114 B)` rounded half-up.
pub fn to_grayscale(img: &RasterImage) -> Result<RasterImage> {
    img.expect_channels(3)?;
    // Integer weights in thousandths keep the half-up rounding exact.
    let data = img
        .data()
        .chunks_exact(3)
        .map(|p| {
            let weighted = 299 * p[0] as u32 + 587 * p[1] as u32 + 114 * p[2] as u32;
            ((weighted + 500) / 1000).min(255) as u8
        })
        .collect();
    RasterImage::gray(img.width(), img.height(), data)
}

/// Splits an RGB image into its R, G and B planes.
pub fn split_channels(img: &RasterImage) -> Result<[RasterImage; 3]> {
    img.expect_channels(3)?;
    let n = img.pixel_count();
    let mut planes = [
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    ];
    for px in img.data().chunks_exact(3) {
        for (plane, &v) in planes.iter_mut().zip(px) {
            plane.push(v);
        }
    }
    let [r, g, b] = planes;
    Ok([
        RasterImage::gray(img.width(), img.height(), r)?,
        RasterImage::gray(img.width(), img.height(), g)?,
        RasterImage::gray(img.width(), img.height(), b)?,
    ])
}

/// Interleaves three equally sized gray planes back into an RGB image.
pub fn merge_channels(r: &RasterImage, g: &RasterImage, b: &RasterImage) -> Result<RasterImage> {
    for plane in [r, g, b] {
        plane.expect_channels(1)?;
        if plane.width() != r.width() || plane.height() != r.height() {
            return Err(Error::Geometry("channel planes differ in size".into()));
        }
    }
    let data = r
        .data()
        .iter()
        .zip(g.data())
        .zip(b.data())
        .flat_map(|((&r, &g), &b)| [r, g, b])
        .collect();
    RasterImage::rgb(r.width(), r.height(), data)
}

/// Replicates a gray image into three identical RGB planes.
pub fn gray_to_rgb(img: &RasterImage) -> Result<RasterImage> {
    img.expect_channels(1)?;
    merge_channels(img, img, img)
}

/// Lookup table `T(v) = round(255 * CDF(v))`, rounded half-up.
pub fn equalization_map(hist: &IntensityHistogram) -> Result<[u8; 256]> {
    let total = hist.total();
    if total == 0 {
        return Err(Error::EmptyHistogram);
    }
    let mut map = [0u8; 256];
    let mut cumulative = 0u64;
    for (v, &c) in hist.counts().iter().enumerate() {
        cumulative += c;
        // round(255 * cum / total) == floor((510 * cum + total) / (2 * total))
        let num = 510 * cumulative as u128 + total as u128;
        map[v] = (num / (2 * total as u128)) as u8;
    }
    Ok(map)
}

pub fn equalize_histogram(img: &RasterImage) -> Result<RasterImage> {
    let hist = IntensityHistogram::of_image(img)?;
    let map = equalization_map(&hist)?;
    let data = img.data().iter().map(|&v| map[v as usize]).collect();
    RasterImage::gray(img.width(), img.height(), data)
}

/// Otsu's threshold: the level `t` maximizing the between-class variance
/// of `{v <= t}` against `{v > t}`. Ties resolve to the smallest `t`; a
/// histogram with a single occupied level returns that level.
pub fn otsu_threshold(hist: &IntensityHistogram) -> Result<u8> {
    let total = hist.total();
    if total == 0 {
        return Err(Error::EmptyHistogram);
    }
    let counts = hist.counts();
    let occupied: Vec<usize> = (0..256).filter(|&v| counts[v] > 0).collect();
    if occupied.len() == 1 {
        return Ok(occupied[0] as u8);
    }

    let total_sum: u128 = counts
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u128 * c as u128)
        .sum();

    let mut best_t = 0u8;
    let mut best = f64::NEG_INFINITY;
    let (mut n0, mut s0) = (0u128, 0u128);
    for t in 0..256usize {
        n0 += counts[t] as u128;
        s0 += t as u128 * counts[t] as u128;
        let n1 = total as u128 - n0;
        let s1 = total_sum - s0;
        // (w0 w1 (mu0 - mu1)^2) * total^2 == (s0 n1 - s1 n0)^2 / (n0 n1);
        // the common factor does not move the argmax.
        let score = if n0 == 0 || n1 == 0 {
            0.0
        } else {
            let diff = (s0 * n1).abs_diff(s1 * n0) as f64;
            diff * diff / (n0 as f64 * n1 as f64)
        };
        if score > best {
            best = score;
            best_t = t as u8;
        }
    }
    Ok(best_t)
}

/// Marks pixels strictly brighter than `t` as grains.
pub fn binarize(img: &RasterImage, t: u8) -> Result<BinaryImage> {
    img.expect_channels(1)?;
    let grains = img.data().iter().map(|&v| v > t).collect();
    BinaryImage::new(img.width(), img.height(), grains)
}
