//! Image files: binary PGM/PPM read and write, plus PNG/JPEG decoding.

use std::fs;
use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, ImageFormat};

use crate::error::{Error, Result};
use crate::raster::RasterImage;

/// Parses a binary `P5` (gray) or `P6` (RGB) file with maxval 255.
pub fn decode_pnm(bytes: &[u8]) -> Result<RasterImage> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(Error::Pnm("missing P5/P6 magic".into())),
    };
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        // whitespace and comments
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Pnm("truncated header".into()));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Pnm("header value out of range".into()))?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(Error::Pnm(format!("maxval {maxval} unsupported, need 255")));
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::Pnm(
            "header must end with one whitespace byte".into(),
        ));
    }
    pos += 1;
    let len = width * height * channels;
    let data = bytes
        .get(pos..pos + len)
        .ok_or_else(|| Error::Pnm(format!("expected {len} pixel bytes")))?;
    RasterImage::new(width, height, channels, data.to_vec())
}

/// Serializes as `P5`/`P6` with a minimal `"P6\n<w> <h>\n255\n"` header.
pub fn encode_pnm(img: &RasterImage) -> Vec<u8> {
    let magic = if img.channels() == 1 { "P5" } else { "P6" };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.data());
    out
}

fn from_dynamic(decoded: DynamicImage) -> Result<RasterImage> {
    let (w, h) = (decoded.width() as usize, decoded.height() as usize);
    if decoded.color().has_color() {
        RasterImage::rgb(w, h, decoded.into_rgb8().into_raw())
    } else {
        RasterImage::gray(w, h, decoded.into_luma8().into_raw())
    }
}

/// Decodes PNM, PNG or JPEG bytes, sniffing the format from the content.
/// Alpha is dropped and 16-bit samples are reduced to 8 bits.
pub fn decode_image(bytes: &[u8]) -> std::result::Result<RasterImage, String> {
    if bytes.starts_with(b"P5") || bytes.starts_with(b"P6") {
        return decode_pnm(bytes).map_err(|e| e.to_string());
    }
    let decoded = image::load_from_memory(bytes).map_err(|e| e.to_string())?;
    from_dynamic(decoded).map_err(|e| e.to_string())
}

pub fn load_image(path: &Path) -> Result<RasterImage> {
    let bytes = fs::read(path)?;
    decode_image(&bytes).map_err(|reason| Error::Decode {
        path: path.to_path_buf(),
        reason,
    })
}

/// Encodes as PNG (8-bit gray or RGB).
pub fn encode_png(img: &RasterImage) -> Result<Vec<u8>> {
    let (w, h) = (img.width() as u32, img.height() as u32);
    let dynamic = if img.channels() == 1 {
        image::GrayImage::from_raw(w, h, img.data().to_vec()).map(DynamicImage::ImageLuma8)
    } else {
        image::RgbImage::from_raw(w, h, img.data().to_vec()).map(DynamicImage::ImageRgb8)
    }
    .expect("raster buffer matches its dimensions");
    let mut out = Cursor::new(Vec::new());
    dynamic
        .write_to(&mut out, ImageFormat::Png)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    Ok(out.into_inner())
}

/// Writes PNM for `.pgm`/`.ppm`/`.pnm` extensions, PNG otherwise.
pub fn save_image(img: &RasterImage, path: &Path) -> Result<()> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let bytes = match ext.as_deref() {
        Some("pgm" | "ppm" | "pnm") => encode_pnm(img),
        _ => encode_png(img)?,
    };
    fs::write(path, bytes)?;
    Ok(())
}
