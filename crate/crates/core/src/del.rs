//! Discrete Del operator: central-difference gradient field and squared
//! gradient magnitude ("saliency") map.

use crate::error::{Error, Result};
use crate::image::{GrayImage, MIN_DIMENSION};
use crate::scalar::Scalar;

/// Per-pixel gradient components. `p` runs along x, `q` along y, both in
/// intensity units per pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField<T> {
    width: usize,
    height: usize,
    p: Vec<T>,
    q: Vec<T>,
}

impl<T: Scalar> GradientField<T> {
    pub fn new(width: usize, height: usize, p: Vec<T>, q: Vec<T>) -> Result<Self> {
        let expected = width * height;
        for buf in [&p, &q] {
            if buf.len() != expected {
                return Err(Error::BufferLength {
                    width,
                    height,
                    expected,
                    actual: buf.len(),
                });
            }
            if let Some(index) = buf.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { index });
            }
        }
        Ok(Self { width, height, p, q })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }

    pub fn q(&self) -> &[T] {
        &self.q
    }
}

/// Non-negative per-pixel map `p^2 + q^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SaliencyMap<T> {
    width: usize,
    height: usize,
    values: Vec<T>,
}

impl<T: Scalar> SaliencyMap<T> {
    pub fn new(width: usize, height: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::BufferLength {
                width,
                height,
                expected: width * height,
                actual: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite() || *v < T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "saliency must be finite and non-negative (index {index})"
            )));
        }
        Ok(Self { width, height, values })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Linear rescale to `[0, 255]` by the map maximum, for visual inspection.
    /// An all-zero map stays black.
    pub fn to_display_image(&self) -> GrayImage<T> {
        let max = self.values.iter().copied().fold(T::zero(), T::max);
        let scale = if max > T::zero() { T::of(255.0) / max } else { T::zero() };
        GrayImage::new_unchecked_size(self.width, self.height, self.values.iter().map(|&v| v * scale).collect())
            .expect("scaled saliency is finite")
    }
}

/// Central differences with unit spacing; neighbors outside the grid are
/// clamped to the edge, so border steps are halved.
pub fn del_transform<T: Scalar>(img: &GrayImage<T>) -> GradientField<T> {
    let (w, h) = img.dims();
    debug_assert!(w >= MIN_DIMENSION && h >= MIN_DIMENSION);
    let half = T::of(0.5);
    let mut p = Vec::with_capacity(w * h);
    let mut q = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            p.push((img.get_clamped(x + 1, y) - img.get_clamped(x - 1, y)) * half);
            q.push((img.get_clamped(x, y + 1) - img.get_clamped(x, y - 1)) * half);
        }
    }
    GradientField { width: w, height: h, p, q }
}

pub fn saliency<T: Scalar>(field: &GradientField<T>) -> SaliencyMap<T> {
    let values = field.p.iter().zip(&field.q).map(|(&p, &q)| p * p + q * q).collect();
    SaliencyMap {
        width: field.width,
        height: field.height,
        values,
    }
}
