//! Laplacian pyramid decomposition and fusion.
//!
//! REDUCE blurs with the 5-tap binomial `[1, 4, 6, 4, 1] / 16` and keeps the
//! even rows and columns (odd sizes are floored). EXPAND is zero insertion
//! followed by twice the same kernel, evaluated on the coarse grid with
//! replicated coarse samples and cropped to the finer level's size.

use crate::error::{Error, Result};
use crate::image::{ensure_same_dims, GrayImage};
use crate::scalar::Scalar;
use crate::smoothing::convolve_separable;

pub const DEFAULT_LEVELS: usize = 4;

/// Smallest edge length allowed at the coarsest level.
pub const MIN_LEVEL_SIZE: usize = 4;

const BINOMIAL: [f64; 5] = [1.0, 4.0, 6.0, 4.0, 1.0];

/// Band-pass detail levels (finest first) followed by the low-pass base.
#[derive(Debug, Clone, PartialEq)]
pub struct Pyramid<T> {
    levels: Vec<GrayImage<T>>,
}

impl<T: Scalar> Pyramid<T> {
    /// All levels; the last one is the base.
    pub fn levels(&self) -> &[GrayImage<T>] {
        &self.levels
    }

    pub fn details(&self) -> &[GrayImage<T>] {
        &self.levels[..self.levels.len() - 1]
    }

    pub fn base(&self) -> &GrayImage<T> {
        self.levels.last().expect("pyramid has a base level")
    }

    /// Number of detail levels.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

fn taps<T: Scalar>() -> [T; 5] {
    BINOMIAL.map(|v| T::of(v / 16.0))
}

/// Blur and drop every other row and column.
pub fn reduce<T: Scalar>(img: &GrayImage<T>) -> GrayImage<T> {
    let blurred = convolve_separable(img, &taps::<T>());
    let (w, h) = (img.width() / 2, img.height() / 2);
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            out.push(blurred.get(2 * x, 2 * y));
        }
    }
    GrayImage::new_unchecked_size(w, h, out).expect("subsampled data is finite")
}

/// Upsample `img` to `(width, height)`; the target must be at most one pixel
/// larger than twice the source in each direction.
pub fn expand<T: Scalar>(img: &GrayImage<T>, width: usize, height: usize) -> GrayImage<T> {
    let (sw, sh) = img.dims();
    debug_assert!(width <= 2 * sw + 1 && height <= 2 * sh + 1);
    let k = taps::<T>();
    let two = T::of(2.0);

    // out(x) = 2 * sum over m in -2..=2 with x - m even of k[m] * in((x - m) / 2)
    let expand_line = |src: &dyn Fn(usize) -> T, n_src: usize, x: usize| -> T {
        let mut acc = T::zero();
        for (i, &t) in k.iter().enumerate() {
            let pos = x as isize - (i as isize - 2);
            if pos.rem_euclid(2) != 0 {
                continue;
            }
            let idx = pos.div_euclid(2).clamp(0, n_src as isize - 1) as usize;
            acc += t * src(idx);
        }
        two * acc
    };

    let mut rows = Vec::with_capacity(width * sh);
    for y in 0..sh {
        for x in 0..width {
            rows.push(expand_line(&|i| img.get(i, y), sw, x));
        }
    }
    let mut out = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            out.push(expand_line(&|j| rows[j * width + x], sh, y));
        }
    }
    GrayImage::new_unchecked_size(width, height, out).expect("expanded data is finite")
}

fn check_size(dims: (usize, usize), levels: usize) -> Result<()> {
    if levels == 0 {
        return Err(Error::InvalidParameter("pyramid needs at least one level".into()));
    }
    let min = MIN_LEVEL_SIZE
        .checked_shl(levels as u32)
        .filter(|&m| m >> levels == MIN_LEVEL_SIZE)
        .unwrap_or(usize::MAX);
    if dims.0 < min || dims.1 < min {
        return Err(Error::PyramidTooSmall {
            width: dims.0,
            height: dims.1,
            levels,
            min,
        });
    }
    Ok(())
}

/// Decomposes `img` into `levels` detail bands plus a base.
pub fn build_laplacian<T: Scalar>(img: &GrayImage<T>, levels: usize) -> Result<Pyramid<T>> {
    check_size(img.dims(), levels)?;
    let mut out = Vec::with_capacity(levels + 1);
    let mut current = img.clone();
    for _ in 0..levels {
        let coarse = reduce(&current);
        let up = expand(&coarse, current.width(), current.height());
        out.push(current.zip_map(&up, |a, b| a - b)?);
        current = coarse;
    }
    out.push(current);
    Ok(Pyramid { levels: out })
}

/// Collapses a pyramid back into a full-resolution image.
pub fn reconstruct<T: Scalar>(pyramid: &Pyramid<T>) -> GrayImage<T> {
    let mut current = pyramid.base().clone();
    for detail in pyramid.details().iter().rev() {
        let up = expand(&current, detail.width(), detail.height());
        current = detail.zip_map(&up, |d, u| d + u).expect("level sizes are consistent");
    }
    current
}

/// Laplacian pyramid fusion: per-pixel max-absolute detail selection (ties go
/// to `a`), averaged base, reconstruction clamped to `[0, 255]`.
pub fn fuse_laplacian<T: Scalar>(a: &GrayImage<T>, b: &GrayImage<T>, levels: usize) -> Result<GrayImage<T>> {
    ensure_same_dims(a.dims(), b.dims())?;
    let pa = build_laplacian(a, levels)?;
    let pb = build_laplacian(b, levels)?;
    let half = T::of(0.5);
    let mut fused = Vec::with_capacity(levels + 1);
    for (da, db) in pa.details().iter().zip(pb.details()) {
        fused.push(da.zip_map(db, |x, y| if y.abs() > x.abs() { y } else { x })?);
    }
    fused.push(pa.base().zip_map(pb.base(), |x, y| (x + y) * half)?);
    Ok(reconstruct(&Pyramid { levels: fused }).clamp_to_u8_range())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(w: usize, h: usize) -> GrayImage<f64> {
        GrayImage::from_fn(w, h, |x, y| ((x * 17 + y * 29 + x * y) % 97) as f64 * 2.5).unwrap()
    }

    #[test]
    fn level_sizes_halve_with_floor() {
        let p = build_laplacian(&pattern(70, 67), 4).unwrap();
        let dims: Vec<_> = p.levels().iter().map(|l| l.dims()).collect();
        assert_eq!(dims, vec![(70, 67), (35, 33), (17, 16), (8, 8), (4, 4)]);
        assert_eq!(p.depth(), 4);
    }

    #[test]
    fn expand_preserves_constants() {
        let c = GrayImage::new_unchecked_size(5, 4, vec![42.0f64; 20]).unwrap();
        for (w, h) in [(10, 8), (11, 9)] {
            let up = expand(&c, w, h);
            assert!(up.samples().iter().all(|v| (v - 42.0).abs() < 1e-12));
        }
    }

    #[test]
    fn round_trip_even_and_odd() {
        for (w, h) in [(64, 64), (67, 71)] {
            let img = pattern(w, h);
            let back = reconstruct(&build_laplacian(&img, 4).unwrap());
            for (a, b) in img.samples().iter().zip(back.samples()) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn too_small_for_levels() {
        let img = pattern(63, 64);
        assert!(matches!(build_laplacian(&img, 4), Err(Error::PyramidTooSmall { min: 64, .. })));
        assert!(build_laplacian(&img, 3).is_ok());
        assert!(build_laplacian(&img, 0).is_err());
        assert!(build_laplacian(&img, 200).is_err());
    }

    #[test]
    fn fusing_an_image_with_itself() {
        let img = pattern(64, 64);
        let f = fuse_laplacian(&img, &img, 4).unwrap();
        assert_eq!(f.dims(), img.dims());
        for (a, b) in img.samples().iter().zip(f.samples()) {
            assert!((a - b).abs() <= 0.5);
        }
    }
}
