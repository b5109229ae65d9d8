//! Synthetic color textures in four families that differ in bright-pixel
//! density and spatial structure. Used as a stand-in corpus for
//! desk-scale experiments.

use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::save_image;
use crate::raster::RasterImage;

/// Family names, also used as class directory names.
pub const FAMILIES: [&str; 4] = ["sparse-speckle", "dense-speckle", "banded", "blotched"];

// (background, foreground) base colors; every channel keeps a wide gap so
// each plane stays bimodal.
const PALETTES: [([u8; 3], [u8; 3]); 4] = [
    ([60, 55, 50], [200, 190, 180]),
    ([90, 70, 60], [210, 180, 160]),
    ([70, 80, 60], [190, 210, 170]),
    ([50, 60, 80], [180, 190, 220]),
];

const COLOR_JITTER: i32 = 15;
const PIXEL_NOISE: i32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthSpec {
    pub classes: usize,
    pub per_class: usize,
    pub size: usize,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            classes: 4,
            per_class: 20,
            size: 96,
            seed: 42,
        }
    }
}

impl SynthSpec {
    fn validate(&self) -> Result<()> {
        if !(1..=FAMILIES.len()).contains(&self.classes) {
            return Err(Error::Parameter(format!(
                "classes must be between 1 and {}, got {}",
                FAMILIES.len(),
                self.classes
            )));
        }
        if self.per_class == 0 {
            return Err(Error::Parameter("per-class count must be positive".into()));
        }
        if self.size < 8 {
            return Err(Error::Parameter(format!(
                "image size must be at least 8, got {}",
                self.size
            )));
        }
        Ok(())
    }
}

fn image_rng(seed: u64, family: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((family as u64) << 32) | index as u64);
    rng
}

/// Bright-pixel mask for one family, row-major `size * size`.
fn structure_mask(family: usize, size: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = size * size;
    match family {
        0 | 1 => {
            let density = if family == 0 {
                rng.gen_range(0.08..0.12)
            } else {
                rng.gen_range(0.35..0.45)
            };
            (0..n).map(|_| rng.gen_bool(density)).collect()
        }
        2 => {
            // Alternating bright and dark row runs of random height; strictly
            // periodic bands would alias with the mask tiling.
            let mut rows = Vec::with_capacity(size);
            let mut bright = rng.gen_bool(0.5);
            while rows.len() < size {
                let run = if bright {
                    rng.gen_range(2..=4)
                } else {
                    rng.gen_range(2..=5)
                };
                rows.extend(std::iter::repeat_n(bright, run));
                bright = !bright;
            }
            (0..n)
                .map(|i| rows[i / size] ^ rng.gen_bool(0.03))
                .collect()
        }
        _ => {
            let target = rng.gen_range(0.25..0.35);
            let mut mask = vec![false; n];
            let mut covered = 0usize;
            while (covered as f64) < target * n as f64 {
                let r = rng.gen_range(3..=6i64);
                let cx = rng.gen_range(0..size as i64);
                let cy = rng.gen_range(0..size as i64);
                for y in (cy - r).max(0)..(cy + r + 1).min(size as i64) {
                    for x in (cx - r).max(0)..(cx + r + 1).min(size as i64) {
                        let (dx, dy) = (x - cx, y - cy);
                        let cell = &mut mask[y as usize * size + x as usize];
                        if dx * dx + dy * dy <= r * r && !*cell {
                            *cell = true;
                            covered += 1;
                        }
                    }
                }
            }
            mask
        }
    }
}

fn jitter(base: [u8; 3], rng: &mut ChaCha8Rng) -> [i32; 3] {
    base.map(|c| c as i32 + rng.gen_range(-COLOR_JITTER..=COLOR_JITTER))
}

/// The `index`-th image of `family`; depends only on its arguments.
pub fn generate_image(family: usize, index: usize, size: usize, seed: u64) -> RasterImage {
    assert!(family < FAMILIES.len(), "family index out of range");
    let mut rng = image_rng(seed, family, index);
    let (bg, fg) = PALETTES[family];
    let bg = jitter(bg, &mut rng);
    let fg = jitter(fg, &mut rng);
    let mask = structure_mask(family, size, &mut rng);
    let mut data = Vec::with_capacity(size * size * 3);
    for &bright in &mask {
        let base = if bright { fg } else { bg };
        for c in base {
            let v = c + rng.gen_range(-PIXEL_NOISE..=PIXEL_NOISE);
            data.push(v.clamp(0, 255) as u8);
        }
    }
    RasterImage::rgb(size, size, data).expect("buffer sized from dimensions")
}

/// One generated image with its class and file name.
#[derive(Debug, Clone)]
pub struct SynthImage {
    pub family: &'static str,
    pub file_name: String,
    pub image: RasterImage,
}

/// Generates the whole corpus in memory, family-major.
pub fn generate(spec: &SynthSpec) -> Result<Vec<SynthImage>> {
    spec.validate()?;
    let mut out = Vec::with_capacity(spec.classes * spec.per_class);
    for (family, name) in FAMILIES.iter().enumerate().take(spec.classes) {
        for index in 0..spec.per_class {
            out.push(SynthImage {
                family: name,
                file_name: format!("{name}_{index:03}.png"),
                image: generate_image(family, index, spec.size, spec.seed),
            });
        }
    }
    Ok(out)
}

/// Writes `<out>/<family>/<family>_<nnn>.png` and returns the paths.
pub fn write_corpus(spec: &SynthSpec, out: &Path) -> Result<Vec<PathBuf>> {
    let images = generate(spec)?;
    let mut paths = Vec::with_capacity(images.len());
    for img in images {
        let dir = out.join(img.family);
        fs::create_dir_all(&dir)?;
        let path = dir.join(&img.file_name);
        save_image(&img.image, &path)?;
        paths.push(path);
    }
    Ok(paths)
}
