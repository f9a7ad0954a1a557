//! Histogram statistics on 8-bit quantized samples.

use crate::error::Result;
use crate::image::{ensure_same_dims, GrayImage};
use crate::scalar::{quantize_u8, Scalar};

/// 256-bin intensity histogram of round-half-up quantized samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256 {
    bins: [u64; 256],
    total: u64,
}

impl Histogram256 {
    pub fn from_image<T: Scalar>(img: &GrayImage<T>) -> Self {
        let mut bins = [0u64; 256];
        for &v in img.samples() {
            bins[quantize_u8(v) as usize] += 1;
        }
        Self {
            bins,
            total: img.len() as u64,
        }
    }

    pub fn bins(&self) -> &[u64; 256] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Shannon entropy in bits; empty bins contribute nothing.
    pub fn entropy(&self) -> f64 {
        let n = self.total as f64;
        self.bins
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| c as f64 / n * (n / c as f64).log2())
            .fold(0.0, |acc, v| acc + v)
    }
}

/// Population standard deviation of the samples.
pub fn std_metric<T: Scalar>(fused: &GrayImage<T>) -> T {
    let mean = fused.mean();
    let var = fused.samples().iter().map(|&v| (v - mean) * (v - mean)).sum::<T>() / T::of(fused.len() as f64);
    var.sqrt()
}

/// Entropy (bits, in `[0, 8]`) of the quantized intensity histogram.
pub fn entropy_metric<T: Scalar>(fused: &GrayImage<T>) -> T {
    T::of(Histogram256::from_image(fused).entropy())
}

/// Mutual information (bits) from the 256x256 joint histogram.
pub fn mutual_information<T: Scalar>(a: &GrayImage<T>, b: &GrayImage<T>) -> Result<T> {
    ensure_same_dims(a.dims(), b.dims())?;
    let mut joint = vec![0u64; 256 * 256];
    let mut ha = [0u64; 256];
    let mut hb = [0u64; 256];
    for (&x, &y) in a.samples().iter().zip(b.samples()) {
        let (i, j) = (quantize_u8(x) as usize, quantize_u8(y) as usize);
        joint[i * 256 + j] += 1;
        ha[i] += 1;
        hb[j] += 1;
    }
    let n = a.len() as f64;
    let mut mi = 0.0;
    for (i, row) in joint.chunks_exact(256).enumerate() {
        if ha[i] == 0 {
            continue;
        }
        for (j, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            // p_ab / (p_a p_b) = c n / (ha hb)
            mi += (c as f64 / n) * (c as f64 * n / (ha[i] as f64 * hb[j] as f64)).log2();
        }
    }
    Ok(T::of(mi.max(0.0)))
}

/// Sum of `MI(source, fused)` over all sources.
pub fn fusion_mi<T: Scalar>(sources: &[GrayImage<T>], fused: &GrayImage<T>) -> Result<T> {
    sources
        .iter()
        .map(|s| mutual_information(s, fused))
        .try_fold(T::zero(), |acc, mi| Ok(acc + mi?))
}
