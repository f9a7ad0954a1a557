//! Mean structural similarity with an 11x11 Gaussian window (sigma 1.5).

use crate::error::{Error, Result};
use crate::image::{ensure_all_same_dims, ensure_same_dims, GrayImage};
use crate::scalar::Scalar;
use crate::smoothing::{convolve_separable, GaussianKernel};

pub const SSIM_WINDOW_SIGMA: f64 = 1.5;
pub const SSIM_C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
pub const SSIM_C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

/// Mean SSIM between `a` and `b`. Local moments use the Gaussian window with
/// replicated borders so every pixel contributes.
pub fn ssim<T: Scalar>(a: &GrayImage<T>, b: &GrayImage<T>) -> Result<T> {
    ensure_same_dims(a.dims(), b.dims())?;
    let kernel = GaussianKernel::new(T::of(SSIM_WINDOW_SIGMA))?;
    let taps = kernel.weights();
    let blur = |img: &GrayImage<T>| convolve_separable(img, taps);
    let product = |x: &GrayImage<T>, y: &GrayImage<T>| x.zip_map(y, |p, q| p * q);

    let mu_a = blur(a);
    let mu_b = blur(b);
    let e_aa = blur(&product(a, a)?);
    let e_bb = blur(&product(b, b)?);
    let e_ab = blur(&product(a, b)?);

    let (c1, c2, two) = (T::of(SSIM_C1), T::of(SSIM_C2), T::of(2.0));
    let mut acc = T::zero();
    for i in 0..a.len() {
        let (ma, mb) = (mu_a.samples()[i], mu_b.samples()[i]);
        let var_a = e_aa.samples()[i] - ma * ma;
        let var_b = e_bb.samples()[i] - mb * mb;
        let cov = e_ab.samples()[i] - ma * mb;
        acc += ((two * ma * mb + c1) * (two * cov + c2)) / ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
    }
    Ok(acc / T::of(a.len() as f64))
}

/// Average of `ssim(source, fused)` over the sources.
pub fn fusion_ssim<T: Scalar>(sources: &[GrayImage<T>], fused: &GrayImage<T>) -> Result<T> {
    if sources.len() < 2 {
        return Err(Error::TooFewInputs {
            required: 2,
            actual: sources.len(),
        });
    }
    ensure_all_same_dims(sources.iter().chain(std::iter::once(fused)))?;
    let mut acc = T::zero();
    for s in sources {
        acc += ssim(s, fused)?;
    }
    Ok(acc / T::of(sources.len() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn textured() -> GrayImage<f64> {
        GrayImage::from_fn(20, 17, |x, y| ((x * 13 + y * 7 + x * y) % 41) as f64 * 6.0).unwrap()
    }

    #[test]
    fn self_similarity_is_one() {
        let a = textured();
        assert!((ssim(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        assert!((fusion_ssim(&[a.clone(), a.clone()], &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_shift_hits_luminance_term() {
        let a = GrayImage::filled(12, 12, 100.0f64).unwrap();
        let b = GrayImage::filled(12, 12, 110.0f64).unwrap();
        // Flat images: only the luminance term departs from 1.
        let expected = (2.0 * 100.0 * 110.0 + SSIM_C1) / (100.0f64.powi(2) + 110.0f64.powi(2) + SSIM_C1);
        let got = ssim(&a, &b).unwrap();
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
        assert!(got < 1.0);

        let t = textured();
        let shifted = t.map(|v| v + 10.0).unwrap();
        assert!(ssim(&t, &shifted).unwrap() < 1.0);
    }

    #[test]
    fn range_and_errors() {
        let a = textured();
        let inv = a.map(|v| 255.0 - v).unwrap();
        let s = ssim(&a, &inv).unwrap();
        assert!((-1.0..=1.0).contains(&s));
        assert!(fusion_ssim(std::slice::from_ref(&a), &a).is_err());
        let small = GrayImage::filled(5, 5, 0.0).unwrap();
        assert!(ssim(&a, &small).is_err());
    }
}
