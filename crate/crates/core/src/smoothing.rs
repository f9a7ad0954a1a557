//! Gaussian pre-smoothing, realized as two 1-D passes.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

/// Smoothing scale used when none is configured.
pub const DEFAULT_SIGMA: f64 = 1.0;

/// Normalized, symmetric 1-D Gaussian taps covering `[-radius, radius]`,
/// with `radius = ceil(3 * sigma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianKernel<T> {
    sigma: T,
    radius: usize,
    weights: Vec<T>,
}

impl<T: Scalar> GaussianKernel<T> {
    pub fn new(sigma: T) -> Result<Self> {
        let s = sigma.to_f64_lossless();
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "smoothing sigma must be positive and finite, got {s}"
            )));
        }
        let radius = (3.0 * s).ceil() as usize;
        // One side is evaluated and mirrored so the taps are exactly symmetric.
        let half: Vec<f64> = (0..=radius)
            .map(|i| (-((i * i) as f64) / (2.0 * s * s)).exp())
            .collect();
        let total = half[0] + 2.0 * half[1..].iter().sum::<f64>();
        let weights = (0..=2 * radius)
            .map(|k| T::of(half[k.abs_diff(radius)] / total))
            .collect();
        Ok(Self {
            sigma,
            radius,
            weights,
        })
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Taps in order `-radius..=radius`.
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Tap at signed offset `i` from the center.
    pub fn weight(&self, offset: isize) -> T {
        self.weights[(offset + self.radius as isize) as usize]
    }
}

/// Builds the 1-D kernel for `sigma`. See [`GaussianKernel::new`].
pub fn gaussian_kernel<T: Scalar>(sigma: T) -> Result<GaussianKernel<T>> {
    GaussianKernel::new(sigma)
}

/// Gaussian smoothing with clamp-to-edge borders; horizontal pass first.
pub fn smooth<T: Scalar>(img: &GrayImage<T>, sigma: T) -> Result<GrayImage<T>> {
    let kernel = GaussianKernel::new(sigma)?;
    Ok(smooth_with(img, &kernel))
}

pub fn smooth_with<T: Scalar>(img: &GrayImage<T>, kernel: &GaussianKernel<T>) -> GrayImage<T> {
    convolve_separable(img, kernel.weights())
}

/// Separable convolution with an odd-length symmetric 1-D kernel applied along
/// rows and then columns, replicating edge samples.
pub(crate) fn convolve_separable<T: Scalar>(img: &GrayImage<T>, taps: &[T]) -> GrayImage<T> {
    let (w, h) = img.dims();
    let horizontal = convolve_rows(img.samples(), w, h, taps);
    let vertical = convolve_cols(&horizontal, w, h, taps);
    GrayImage::new_unchecked_size(w, h, vertical).expect("convolution of finite data stays finite")
}

fn convolve_rows<T: Scalar>(src: &[T], w: usize, h: usize, taps: &[T]) -> Vec<T> {
    let r = (taps.len() / 2) as isize;
    let mut out = vec![T::zero(); w * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = T::zero();
            for (k, &t) in taps.iter().enumerate() {
                let sx = (x as isize + k as isize - r).clamp(0, w as isize - 1) as usize;
                acc += t * row[sx];
            }
            out[y * w + x] = acc;
        }
    }
    out
}

fn convolve_cols<T: Scalar>(src: &[T], w: usize, h: usize, taps: &[T]) -> Vec<T> {
    let r = (taps.len() / 2) as isize;
    let mut out = vec![T::zero(); w * h];
    for y in 0..h {
        for (k, &t) in taps.iter().enumerate() {
            let sy = (y as isize + k as isize - r).clamp(0, h as isize - 1) as usize;
            let src_row = &src[sy * w..(sy + 1) * w];
            let dst_row = &mut out[y * w..(y + 1) * w];
            for (d, &s) in dst_row.iter_mut().zip(src_row) {
                *d += t * s;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_sigma_kernel_matches_hand_evaluation() {
        let k = gaussian_kernel(1.0f64).unwrap();
        assert_eq!(k.radius(), 3);
        assert_eq!(k.weights().len(), 7);
        let raw: Vec<f64> = (-3..=3).map(|i: i32| (-(i * i) as f64 / 2.0).exp()).collect();
        let z: f64 = raw.iter().sum();
        for (w, r) in k.weights().iter().zip(&raw) {
            assert!((w - r / z).abs() < 1e-15);
        }
        // 1/Z with Z = 1 + 2(e^-0.5 + e^-2 + e^-4.5) = 2.5059...
        assert!((k.weight(0) - 0.399050_279).abs() < 1e-8);
        assert!((k.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_symmetric_and_normalized_for_many_sigmas() {
        for &s in &[0.1f64, 0.5, 0.8, 1.0, 1.5, 2.3, 4.0, 7.7] {
            let k = gaussian_kernel(s).unwrap();
            assert_eq!(k.radius(), (3.0 * s).ceil() as usize);
            let r = k.radius() as isize;
            for i in 0..=r {
                assert_eq!(k.weight(i), k.weight(-i));
            }
            assert!((k.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12, "sigma {s}");
            assert!(k.weights().iter().all(|&w| w >= 0.0));
        }
    }

    #[test]
    fn rejects_non_positive_sigma() {
        for s in [0.0f64, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(gaussian_kernel(s), Err(Error::InvalidParameter(_))));
        }
    }

    #[test]
    fn constant_image_is_preserved() {
        let img = GrayImage::filled(7, 5, 93.25f64).unwrap();
        for s in [0.5, 1.0, 3.0] {
            let out = smooth(&img, s).unwrap();
            assert!(out.samples().iter().all(|v| (v - 93.25).abs() < 1e-9));
        }
    }

    #[test]
    fn impulse_response_is_outer_product() {
        let img = GrayImage::from_fn(5, 5, |x, y| if x == 2 && y == 2 { 255.0f64 } else { 0.0 }).unwrap();
        let k = gaussian_kernel(1.0f64).unwrap();
        let out = smooth_with(&img, &k);
        for y in 0..5isize {
            for x in 0..5isize {
                let expected = 255.0 * k.weight(x - 2) * k.weight(y - 2);
                let got = out.get(x as usize, y as usize);
                // Border pixels also collect clamped mass from outside the grid;
                // only the 3x3 core is a pure outer product on a 5x5 image.
                if (1..=3).contains(&x) && (1..=3).contains(&y) {
                    assert!((got - expected).abs() < 1e-9, "({x},{y}) {got} vs {expected}");
                }
            }
        }
        assert!((out.get(2, 2) - 255.0 * k.weight(0).powi(2)).abs() < 1e-9);
    }

    #[test]
    fn linear_in_scale() {
        let img = GrayImage::from_fn(9, 6, |x, y| ((x * 7 + y * 13) % 17) as f64).unwrap();
        let a = 3.5;
        let lhs = smooth(&img.map(|v| a * v).unwrap(), 1.0).unwrap();
        let rhs = smooth(&img, 1.0).unwrap();
        for (l, r) in lhs.samples().iter().zip(rhs.samples()) {
            assert!((l - a * r).abs() < 1e-9);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let img = GrayImage::filled(4, 4, 10.0f32).unwrap();
        let out = smooth(&img, 1.0f32).unwrap();
        assert!(out.samples().iter().all(|v| (v - 10.0).abs() < 1e-4));
    }
}
