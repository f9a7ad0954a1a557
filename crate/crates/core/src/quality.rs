//! The Del-operator fusion quality score.
//!
//! Pipeline: Gaussian smoothing of every source and the fused image, central
//! difference gradient field, squared magnitude saliency, per-pixel
//! saliency-weighted statistics over the sources, a two-tailed normal
//! probability for the fused saliency, and finally the mean probability.

use crate::del::{del_transform, saliency, SaliencyMap};
use crate::error::{Error, Result};
use crate::image::{ensure_all_same_dims, ensure_same_dims, GrayImage};
use crate::scalar::Scalar;
use crate::smoothing::{smooth_with, GaussianKernel, DEFAULT_SIGMA};

/// Absolute threshold below which a saliency sum or a spread counts as zero.
pub const DEGENERATE_EPS: f64 = 1e-12;

/// Per-pixel weighted mean and spread of the source saliencies.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelStats<T> {
    width: usize,
    height: usize,
    mu: Vec<T>,
    sigma: Vec<T>,
}

impl<T: Scalar> PixelStats<T> {
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn mu(&self) -> &[T] {
        &self.mu
    }

    pub fn sigma(&self) -> &[T] {
        &self.sigma
    }
}

/// Per-pixel probability that the fused pixel is well fused; values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMap<T> {
    width: usize,
    height: usize,
    values: Vec<T>,
}

impl<T: Scalar> ProbabilityMap<T> {
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Arithmetic mean over every pixel, borders included.
    pub fn mean(&self) -> FusionScore<T> {
        let total: T = self.values.iter().copied().sum();
        FusionScore {
            value: total / T::of(self.values.len() as f64),
            pixel_count: self.values.len(),
        }
    }

    /// Probabilities scaled by 255 for writing as an 8-bit image.
    pub fn to_display_image(&self) -> GrayImage<T> {
        let scale = T::of(255.0);
        GrayImage::new_unchecked_size(self.width, self.height, self.values.iter().map(|&v| v * scale).collect())
            .expect("probabilities are finite")
    }
}

/// Final score in `[0, 1]`; larger means better fused.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionScore<T> {
    pub value: T,
    pub pixel_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QDelConfig<T> {
    /// Standard deviation of the pre-smoothing Gaussian, in pixels.
    pub smoothing_sigma: T,
}

impl<T: Scalar> Default for QDelConfig<T> {
    fn default() -> Self {
        Self {
            smoothing_sigma: T::of(DEFAULT_SIGMA),
        }
    }
}

/// Every intermediate map of one evaluation, for debugging dumps.
#[derive(Debug, Clone)]
pub struct QDelReport<T> {
    pub score: FusionScore<T>,
    pub source_saliency: Vec<SaliencyMap<T>>,
    pub fused_saliency: SaliencyMap<T>,
    pub stats: PixelStats<T>,
    pub probability: ProbabilityMap<T>,
}

/// Per-pixel `mu = sum(m_i^2) / sum(m_i)` and
/// `sigma = sqrt(sum((m_i - mu)^2) / n)` over `n >= 2` source saliency maps.
///
/// A pixel whose saliency sum is below [`DEGENERATE_EPS`] gets `mu = sigma = 0`;
/// a pixel where all sources agree gets `mu` equal to that value and
/// `sigma = 0` exactly.
pub fn pixel_stats<T: Scalar>(saliencies: &[SaliencyMap<T>]) -> Result<PixelStats<T>> {
    if saliencies.len() < 2 {
        return Err(Error::TooFewInputs {
            required: 2,
            actual: saliencies.len(),
        });
    }
    let (width, height) = saliencies[0].dims();
    for map in &saliencies[1..] {
        ensure_same_dims((width, height), map.dims())?;
    }
    let eps = T::of(DEGENERATE_EPS);
    let n = T::of(saliencies.len() as f64);
    let len = width * height;
    let mut mu = Vec::with_capacity(len);
    let mut sigma = Vec::with_capacity(len);
    let mut column = Vec::with_capacity(saliencies.len());
    for i in 0..len {
        column.clear();
        column.extend(saliencies.iter().map(|m| m.values()[i]));
        let sum: T = column.iter().copied().sum();
        if sum < eps {
            mu.push(T::zero());
            sigma.push(T::zero());
            continue;
        }
        let first = column[0];
        if column.iter().all(|&v| v == first) {
            mu.push(first);
            sigma.push(T::zero());
            continue;
        }
        let m = column.iter().map(|&v| v * v).sum::<T>() / sum;
        let var = column.iter().map(|&v| (v - m) * (v - m)).sum::<T>() / n;
        mu.push(m);
        sigma.push(var.sqrt());
    }
    Ok(PixelStats {
        width,
        height,
        mu,
        sigma,
    })
}

/// Standard normal CDF, `(1 + erf(z / sqrt 2)) / 2`, evaluated through `erfc`
/// so both tails keep full relative precision.
pub fn std_normal_cdf<T: Scalar>(z: T) -> Result<T> {
    let z = finite(z)?;
    Ok(T::of(0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)))
}

/// Upper tail `1 - Phi(z)`.
pub fn std_normal_sf<T: Scalar>(z: T) -> Result<T> {
    let z = finite(z)?;
    Ok(T::of(0.5 * libm::erfc(z / std::f64::consts::SQRT_2)))
}

fn finite<T: Scalar>(z: T) -> Result<f64> {
    let z = z.to_f64_lossless();
    if !z.is_finite() {
        return Err(Error::InvalidParameter(format!("z must be finite, got {z}")));
    }
    Ok(z)
}

/// Two-tailed probability `2 * (1 - Phi(|m_F - mu| / sigma))` per pixel.
///
/// Where `sigma <= DEGENERATE_EPS` the limit is used instead: 1 if the fused
/// saliency matches `mu` to within the same threshold, 0 otherwise.
pub fn well_fused_probability<T: Scalar>(
    fused_saliency: &SaliencyMap<T>,
    stats: &PixelStats<T>,
) -> Result<ProbabilityMap<T>> {
    ensure_same_dims(stats.dims(), fused_saliency.dims())?;
    let eps = T::of(DEGENERATE_EPS);
    let two = T::of(2.0);
    let values = fused_saliency
        .values()
        .iter()
        .zip(stats.mu.iter().zip(&stats.sigma))
        .map(|(&mf, (&mu, &sigma))| {
            let deviation = (mf - mu).abs();
            if sigma > eps {
                let z = deviation / sigma;
                let p = two * std_normal_sf(z).expect("z is finite for finite saliencies");
                p.max(T::zero()).min(T::one())
            } else if deviation <= eps {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    Ok(ProbabilityMap {
        width: stats.width,
        height: stats.height,
        values,
    })
}

/// Scores `fused` against `n >= 2` registered sources with the default
/// smoothing scale.
pub fn q_del<T: Scalar>(sources: &[GrayImage<T>], fused: &GrayImage<T>) -> Result<FusionScore<T>> {
    q_del_with(sources, fused, &QDelConfig::default())
}

pub fn q_del_with<T: Scalar>(
    sources: &[GrayImage<T>],
    fused: &GrayImage<T>,
    config: &QDelConfig<T>,
) -> Result<FusionScore<T>> {
    Ok(q_del_report(sources, fused, config)?.score)
}

pub fn q_del_report<T: Scalar>(
    sources: &[GrayImage<T>],
    fused: &GrayImage<T>,
    config: &QDelConfig<T>,
) -> Result<QDelReport<T>> {
    if sources.len() < 2 {
        return Err(Error::TooFewInputs {
            required: 2,
            actual: sources.len(),
        });
    }
    ensure_all_same_dims(sources.iter().chain(std::iter::once(fused)))?;
    let kernel = GaussianKernel::new(config.smoothing_sigma)?;
    let to_saliency = |img: &GrayImage<T>| saliency(&del_transform(&smooth_with(img, &kernel)));

    let source_saliency: Vec<_> = sources.iter().map(to_saliency).collect();
    let fused_saliency = to_saliency(fused);
    let stats = pixel_stats(&source_saliency)?;
    let probability = well_fused_probability(&fused_saliency, &stats)?;
    Ok(QDelReport {
        score: probability.mean(),
        source_saliency,
        fused_saliency,
        stats,
        probability,
    })
}
