//! Seeded synthetic source pairs with known complementary structure.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

pub const MIN_SYNTHETIC_SIZE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyntheticKind {
    /// Vertical bars in the first image, horizontal bars in the second, on a
    /// shared smooth background.
    ComplementaryEdges,
    /// The first image carries texture where the second is flat black and
    /// vice versa.
    ConflictingRegions,
    /// Clean structure and a copy corrupted by Gaussian noise.
    NoisePair,
}

impl SyntheticKind {
    pub const ALL: [SyntheticKind; 3] = [
        SyntheticKind::ComplementaryEdges,
        SyntheticKind::ConflictingRegions,
        SyntheticKind::NoisePair,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SyntheticKind::ComplementaryEdges => "complementary-edges",
            SyntheticKind::ConflictingRegions => "conflicting-regions",
            SyntheticKind::NoisePair => "noise-pair",
        }
    }
}

impl fmt::Display for SyntheticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SyntheticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SyntheticKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownId {
                kind: "synthetic kind",
                id: s.to_string(),
                registered: SyntheticKind::ALL.map(SyntheticKind::as_str).join(", "),
            })
    }
}

/// Bar positions along one axis: `(start, width, amplitude)`.
pub type Bars = Vec<(usize, usize, f64)>;

/// A generated pair plus the bar layout for the complementary-edges kind.
#[derive(Debug, Clone)]
pub struct SyntheticPair<T> {
    pub first: GrayImage<T>,
    pub second: GrayImage<T>,
    /// Column bars of `first` (complementary-edges only).
    pub vertical_bars: Bars,
    /// Row bars of `second` (complementary-edges only).
    pub horizontal_bars: Bars,
}

/// Deterministic `size x size` pair for `seed`. All samples lie in `[0, 255]`.
pub fn gen_synthetic<T: Scalar>(kind: SyntheticKind, seed: u64, size: usize) -> Result<SyntheticPair<T>> {
    if size < MIN_SYNTHETIC_SIZE {
        return Err(Error::InvalidParameter(format!(
            "synthetic size must be at least {MIN_SYNTHETIC_SIZE}, got {size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        SyntheticKind::ComplementaryEdges => complementary_edges(&mut rng, size),
        SyntheticKind::ConflictingRegions => conflicting_regions(&mut rng, size),
        SyntheticKind::NoisePair => noise_pair(&mut rng, size),
    }
}

fn smooth_background(rng: &mut ChaCha8Rng, size: usize) -> impl Fn(usize, usize) -> f64 {
    let base = rng.random_range(50.0..80.0);
    let gx = rng.random_range(-0.3..0.3);
    let gy = rng.random_range(-0.3..0.3);
    let amp = rng.random_range(5.0..15.0);
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let n = size as f64;
    move |x, y| {
        let (xf, yf) = (x as f64, y as f64);
        base + gx * xf + gy * yf + amp * (std::f64::consts::TAU * (xf + yf) / (2.0 * n) + phase).sin()
    }
}

fn random_bars(rng: &mut ChaCha8Rng, size: usize) -> Bars {
    let count = (size / 12).max(3);
    let slot = size / count;
    (0..count)
        .map(|i| {
            let width = rng.random_range(2..=(slot / 2).max(2));
            let start = i * slot + rng.random_range(0..=(slot - width));
            let amp = rng.random_range(60.0..120.0);
            (start, width, amp)
        })
        .collect()
}

fn bar_value(bars: &Bars, pos: usize) -> f64 {
    bars.iter()
        .find(|&&(s, w, _)| pos >= s && pos < s + w)
        .map_or(0.0, |&(_, _, a)| a)
}

fn to_image<T: Scalar>(size: usize, f: impl Fn(usize, usize) -> f64) -> Result<GrayImage<T>> {
    GrayImage::from_fn(size, size, |x, y| T::of(f(x, y).clamp(0.0, 255.0)))
}

fn complementary_edges<T: Scalar>(rng: &mut ChaCha8Rng, size: usize) -> Result<SyntheticPair<T>> {
    let bg = smooth_background(rng, size);
    let vertical_bars = random_bars(rng, size);
    let horizontal_bars = random_bars(rng, size);
    let first = to_image(size, |x, y| bg(x, y) + bar_value(&vertical_bars, x))?;
    let second = to_image(size, |x, y| bg(x, y) + bar_value(&horizontal_bars, y))?;
    Ok(SyntheticPair {
        first,
        second,
        vertical_bars,
        horizontal_bars,
    })
}

fn conflicting_regions<T: Scalar>(rng: &mut ChaCha8Rng, size: usize) -> Result<SyntheticPair<T>> {
    let n = size as f64;
    let cx = rng.random_range(0.35..0.65) * n;
    let cy = rng.random_range(0.35..0.65) * n;
    let radius = rng.random_range(0.2..0.3) * n;
    let period = rng.random_range(5.0..9.0);
    let level = rng.random_range(140.0..200.0);
    let inside = move |x: usize, y: usize| ((x as f64 - cx).powi(2) + (y as f64 - cy).powi(2)).sqrt() < radius;
    let texture = move |x: usize, y: usize| {
        let (xf, yf) = (x as f64, y as f64);
        level + 40.0 * (std::f64::consts::TAU * xf / period).sin() * (std::f64::consts::TAU * yf / period).cos()
    };
    let first = to_image(size, |x, y| if inside(x, y) { texture(x, y) } else { 0.0 })?;
    let second = to_image(size, |x, y| if inside(x, y) { 0.0 } else { texture(y, x) })?;
    Ok(SyntheticPair {
        first,
        second,
        vertical_bars: Vec::new(),
        horizontal_bars: Vec::new(),
    })
}

fn noise_pair<T: Scalar>(rng: &mut ChaCha8Rng, size: usize) -> Result<SyntheticPair<T>> {
    let bg = smooth_background(rng, size);
    let vertical = random_bars(rng, size);
    let horizontal = random_bars(rng, size);
    let clean = move |x: usize, y: usize| bg(x, y) + 0.5 * (bar_value(&vertical, x) + bar_value(&horizontal, y));
    let noise = Normal::new(0.0, 12.0).expect("valid normal");
    let mut perturb = Vec::with_capacity(size * size);
    for _ in 0..size * size {
        perturb.push(noise.sample(rng));
    }
    let first = to_image(size, &clean)?;
    let second = to_image(size, |x, y| clean(x, y) + perturb[y * size + x])?;
    Ok(SyntheticPair {
        first,
        second,
        vertical_bars: Vec::new(),
        horizontal_bars: Vec::new(),
    })
}
