//! Grayscale image carrier and file I/O.

mod io;

pub use io::{load_image, save_image};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest accepted edge length: central differences need an interior pixel.
pub const MIN_DIMENSION: usize = 3;

/// Row-major grid of finite grayscale samples, nominally in `[0, 255]`.
///
/// Immutable after construction; every transform returns a new image.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage<T> {
    width: usize,
    height: usize,
    samples: Vec<T>,
}

impl<T: Scalar> GrayImage<T> {
    /// Builds an image after checking the size, buffer length and finiteness.
    pub fn new(width: usize, height: usize, samples: Vec<T>) -> Result<Self> {
        if width < MIN_DIMENSION || height < MIN_DIMENSION {
            return Err(Error::ImageTooSmall { width, height });
        }
        Self::new_unchecked_size(width, height, samples)
    }

    /// Same as [`GrayImage::new`] without the 3x3 minimum. Used for coarse
    /// pyramid levels and window-sized scratch buffers.
    pub(crate) fn new_unchecked_size(width: usize, height: usize, samples: Vec<T>) -> Result<Self> {
        let expected = width * height;
        if samples.len() != expected {
            return Err(Error::BufferLength {
                width,
                height,
                expected,
                actual: samples.len(),
            });
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut samples = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        Self::new(width, height, samples)
    }

    pub fn filled(width: usize, height: usize, value: T) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    /// `(width, height)`.
    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.samples[y * self.width + x]
    }

    /// Sample at `(x, y)` with out-of-range coordinates clamped to the edge.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> T {
        let cx = x.clamp(0, self.width as isize - 1) as usize;
        let cy = y.clamp(0, self.height as isize - 1) as usize;
        self.samples[cy * self.width + cx]
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Applies `f` to every sample. Fails if `f` produces a non-finite value.
    pub fn map(&self, f: impl Fn(T) -> T) -> Result<Self> {
        Self::new_unchecked_size(self.width, self.height, self.samples.iter().map(|&v| f(v)).collect())
    }

    /// Combines two equally sized images sample by sample.
    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        ensure_same_dims(self.dims(), other.dims())?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new_unchecked_size(self.width, self.height, samples)
    }

    pub fn clamp_to_u8_range(&self) -> Self {
        let (lo, hi) = (T::zero(), T::of(255.0));
        Self {
            width: self.width,
            height: self.height,
            samples: self.samples.iter().map(|&v| v.max(lo).min(hi)).collect(),
        }
    }

    /// Converts the sample type, e.g. `f64` to `f32`.
    pub fn cast<U: Scalar>(&self) -> GrayImage<U> {
        GrayImage {
            width: self.width,
            height: self.height,
            samples: self.samples.iter().map(|v| U::of(v.to_f64_lossless())).collect(),
        }
    }

    pub fn mean(&self) -> T {
        self.samples.iter().copied().sum::<T>() / T::of(self.samples.len() as f64)
    }
}

pub(crate) fn ensure_same_dims(expected: (usize, usize), actual: (usize, usize)) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// Checks that every image in `images` shares the dimensions of the first one.
pub(crate) fn ensure_all_same_dims<'a, T: Scalar + 'a>(
    images: impl IntoIterator<Item = &'a GrayImage<T>>,
) -> Result<()> {
    let mut iter = images.into_iter();
    if let Some(first) = iter.next() {
        for img in iter {
            ensure_same_dims(first.dims(), img.dims())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_images() {
        assert!(matches!(
            GrayImage::<f64>::filled(2, 5, 0.0),
            Err(Error::ImageTooSmall { width: 2, height: 5 })
        ));
    }

    #[test]
    fn rejects_wrong_length_and_nan() {
        assert!(matches!(
            GrayImage::new(3, 3, vec![0.0f64; 8]),
            Err(Error::BufferLength { expected: 9, actual: 8, .. })
        ));
        let mut s = vec![0.0f64; 9];
        s[4] = f64::NAN;
        assert!(matches!(GrayImage::new(3, 3, s), Err(Error::NonFinite { index: 4 })));
        let mut s = vec![0.0f64; 9];
        s[0] = f64::INFINITY;
        assert!(matches!(GrayImage::new(3, 3, s), Err(Error::NonFinite { index: 0 })));
    }

    #[test]
    fn clamped_access_replicates_edges() {
        let img = GrayImage::from_fn(3, 3, |x, y| (x + 10 * y) as f64).unwrap();
        assert_eq!(img.get_clamped(-1, 0), 0.0);
        assert_eq!(img.get_clamped(5, 1), 12.0);
        assert_eq!(img.get_clamped(1, -4), 1.0);
        assert_eq!(img.get_clamped(2, 9), 22.0);
    }

    #[test]
    fn zip_map_checks_dims() {
        let a = GrayImage::filled(3, 3, 1.0f64).unwrap();
        let b = GrayImage::filled(4, 3, 1.0f64).unwrap();
        assert!(matches!(a.zip_map(&b, |x, y| x + y), Err(Error::DimensionMismatch { .. })));
    }
}
