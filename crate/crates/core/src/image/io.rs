use std::fs;
use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, ImageFormat};

use super::GrayImage;
use crate::error::{Error, Result};
use crate::scalar::{quantize_u8, Scalar};

const PNG_SIGNATURE: &[u8] = b"\x89PNG\r\n\x1a\n";

/// BT.601 luma weights.
const LUMA_R: f64 = 0.299;
const LUMA_G: f64 = 0.587;
const LUMA_B: f64 = 0.114;

/// Reads an 8-bit PNG (gray, gray+alpha, RGB or RGBA) or a binary PGM (P5,
/// maxval 255). Color pixels are reduced to BT.601 luma; alpha is ignored.
pub fn load_image<T: Scalar>(path: impl AsRef<Path>) -> Result<GrayImage<T>> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let format = if bytes.starts_with(PNG_SIGNATURE) {
        ImageFormat::Png
    } else if bytes.starts_with(b"P5") {
        ImageFormat::Pnm
    } else {
        return Err(unsupported(path, "expected PNG or binary PGM (P5)"));
    };
    let decoded = image::load_from_memory_with_format(&bytes, format).map_err(|source| Error::Decode {
        path: path.to_path_buf(),
        source,
    })?;

    let (width, height) = (decoded.width() as usize, decoded.height() as usize);
    let samples: Vec<T> = match decoded {
        DynamicImage::ImageLuma8(buf) => buf.into_raw().into_iter().map(|v| T::of(v as f64)).collect(),
        DynamicImage::ImageLumaA8(buf) => buf.pixels().map(|p| T::of(p.0[0] as f64)).collect(),
        DynamicImage::ImageRgb8(buf) => buf.pixels().map(|p| luma(p.0[0], p.0[1], p.0[2])).collect(),
        DynamicImage::ImageRgba8(buf) => buf.pixels().map(|p| luma(p.0[0], p.0[1], p.0[2])).collect(),
        other => {
            return Err(unsupported(
                path,
                &format!("only 8-bit samples are supported, got {:?}", other.color()),
            ))
        }
    };
    GrayImage::new(width, height, samples)
}

/// Writes an 8-bit grayscale PGM (P5) or PNG chosen by the file extension.
///
/// Samples are rounded half up and clamped to `[0, 255]`. The file is only
/// touched once encoding has succeeded.
pub fn save_image<T: Scalar>(img: &GrayImage<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode(img, path)?;
    fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn encode<T: Scalar>(img: &GrayImage<T>, path: &Path) -> Result<Vec<u8>> {
    let pixels: Vec<u8> = img.samples().iter().map(|&v| quantize_u8(v)).collect();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("pgm") => {
            let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
            out.extend_from_slice(&pixels);
            Ok(out)
        }
        Some("png") => {
            let buf = image::GrayImage::from_raw(img.width() as u32, img.height() as u32, pixels)
                .expect("buffer length matches dimensions");
            let mut out = Cursor::new(Vec::new());
            DynamicImage::ImageLuma8(buf)
                .write_to(&mut out, ImageFormat::Png)
                .map_err(|source| Error::Decode {
                    path: path.to_path_buf(),
                    source,
                })?;
            Ok(out.into_inner())
        }
        _ => Err(unsupported(path, "output extension must be .pgm or .png")),
    }
}

fn luma<T: Scalar>(r: u8, g: u8, b: u8) -> T {
    T::of(LUMA_R * r as f64 + LUMA_G * g as f64 + LUMA_B * b as f64)
}

fn unsupported(path: &Path, reason: &str) -> Error {
    Error::UnsupportedFormat {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    }
}
