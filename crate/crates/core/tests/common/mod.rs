//! Brute-force reference implementations and seeded input generators shared
//! by the integration tests. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use std::collections::HashMap;

use qdel::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn clamp_idx(i: isize, n: usize) -> usize {
    i.clamp(0, n as isize - 1) as usize
}

/// Dense 2-D Gaussian convolution with clamp-to-edge borders.
pub fn smooth_dense(img: &[f64], w: usize, h: usize, sigma: f64) -> Vec<f64> {
    let r = (3.0 * sigma).ceil() as isize;
    let mut weights = Vec::new();
    let mut total = 0.0;
    for dy in -r..=r {
        for dx in -r..=r {
            let g = (-((dx * dx + dy * dy) as f64) / (2.0 * sigma * sigma)).exp();
            weights.push((dx, dy, g));
            total += g;
        }
    }
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for &(dx, dy, g) in &weights {
                let sx = clamp_idx(x as isize + dx, w);
                let sy = clamp_idx(y as isize + dy, h);
                acc += g / total * img[sy * w + sx];
            }
            out[y * w + x] = acc;
        }
    }
    out
}

/// Squared central-difference gradient magnitude, clamp-to-edge.
pub fn saliency_direct(img: &[f64], w: usize, h: usize) -> Vec<f64> {
    let at = |x: isize, y: isize| img[clamp_idx(y, h) * w + clamp_idx(x, w)];
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let p = (at(x + 1, y) - at(x - 1, y)) / 2.0;
            let q = (at(x, y + 1) - at(x, y - 1)) / 2.0;
            out.push(p * p + q * q);
        }
    }
    out
}

/// Weighted mean and population spread at one pixel, with the zero-sum and
/// all-equal rules.
pub fn stats_direct(values: &[f64]) -> (f64, f64) {
    let sum: f64 = values.iter().sum();
    if sum < 1e-12 {
        return (0.0, 0.0);
    }
    if values.windows(2).all(|w| w[0] == w[1]) {
        return (values[0], 0.0);
    }
    let mut num = 0.0;
    for v in values {
        num += v * v;
    }
    let mu = num / sum;
    let mut ss = 0.0;
    for v in values {
        ss += (v - mu) * (v - mu);
    }
    (mu, (ss / values.len() as f64).sqrt())
}

fn normal_density(t: f64) -> f64 {
    (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Phi(z) by integrating the standard normal density from -40 to z. The
/// interval is split at 0 so the peak is always a node.
pub fn phi_quadrature(z: f64) -> f64 {
    if z <= 0.0 {
        integrate(&normal_density, -40.0, z, 1e-14)
    } else {
        integrate(&normal_density, -40.0, 0.0, 1e-14) + integrate(&normal_density, 0.0, z, 1e-14)
    }
}

/// 1 - Phi(z) for z >= 0, integrating the upper tail directly.
pub fn upper_tail_quadrature(z: f64) -> f64 {
    integrate(&normal_density, z, z + 40.0, 1e-15)
}

fn quantize(v: f64) -> u8 {
    let r = (v + 0.5).floor();
    if r < 0.0 {
        0
    } else if r > 255.0 {
        255
    } else {
        r as u8
    }
}

pub fn entropy_direct(img: &[f64]) -> f64 {
    let mut counts: HashMap<u8, usize> = HashMap::new();
    for &v in img {
        *counts.entry(quantize(v)).or_default() += 1;
    }
    let n = img.len() as f64;
    counts.values().map(|&c| -(c as f64 / n) * (c as f64 / n).log2()).sum()
}

pub fn mi_direct(a: &[f64], b: &[f64]) -> f64 {
    let mut joint: HashMap<(u8, u8), usize> = HashMap::new();
    let mut ma: HashMap<u8, usize> = HashMap::new();
    let mut mb: HashMap<u8, usize> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        let (qx, qy) = (quantize(x), quantize(y));
        *joint.entry((qx, qy)).or_default() += 1;
        *ma.entry(qx).or_default() += 1;
        *mb.entry(qy).or_default() += 1;
    }
    let n = a.len() as f64;
    joint
        .iter()
        .map(|(&(i, j), &c)| {
            let pab = c as f64 / n;
            let pa = ma[&i] as f64 / n;
            let pb = mb[&j] as f64 / n;
            pab * (pab / (pa * pb)).log2()
        })
        .sum()
}

pub fn std_direct(img: &[f64]) -> f64 {
    let n = img.len() as f64;
    let mean = img.iter().sum::<f64>() / n;
    (img.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Mean SSIM with an explicit 11x11 window loop per pixel.
pub fn ssim_direct(a: &[f64], b: &[f64], w: usize, h: usize) -> f64 {
    let sigma = 1.5f64;
    let r = 5isize;
    let g1: Vec<f64> = (-r..=r).map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp()).collect();
    let z: f64 = g1.iter().sum();
    let c1 = (0.01f64 * 255.0).powi(2);
    let c2 = (0.03f64 * 255.0).powi(2);
    let mut total = 0.0;
    for y in 0..h as isize {
        for x in 0..w as isize {
            let (mut ma, mut mb, mut aa, mut bb, mut ab) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for dy in -r..=r {
                for dx in -r..=r {
                    let wt = g1[(dx + r) as usize] * g1[(dy + r) as usize] / (z * z);
                    let idx = clamp_idx(y + dy, h) * w + clamp_idx(x + dx, w);
                    let (va, vb) = (a[idx], b[idx]);
                    ma += wt * va;
                    mb += wt * vb;
                    aa += wt * va * va;
                    bb += wt * vb * vb;
                    ab += wt * va * vb;
                }
            }
            let (va, vb, cov) = (aa - ma * ma, bb - mb * mb, ab - ma * mb);
            total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
        }
    }
    total / (w * h) as f64
}

/// Mixed-content test image: smooth ramp, blocks, and uniform noise.
pub fn random_image(rng: &mut ChaCha8Rng, w: usize, h: usize, lo: f64, hi: f64) -> GrayImage<f64> {
    let span = hi - lo;
    let gx = rng.random_range(-1.0..1.0);
    let gy = rng.random_range(-1.0..1.0);
    let block = rng.random_range(2..8usize);
    let block_vals: Vec<f64> = (0..64).map(|_| rng.random_range(0.0..1.0)).collect();
    let noise_amp = rng.random_range(0.0..0.4);
    GrayImage::from_fn(w, h, |x, y| {
        let ramp = 0.5 + 0.25 * (gx * x as f64 / w as f64 + gy * y as f64 / h as f64);
        let b = block_vals[((x / block) * 7 + (y / block) * 3) % 64];
        let v = 0.4 * ramp + 0.3 * b + noise_amp * rng.random_range(0.0..1.0);
        lo + span * v.clamp(0.0, 1.0)
    })
    .unwrap()
}

/// Image whose smoothed central-difference saliency is bounded away from zero:
/// a steep ramp plus a bounded wobble that cannot cancel it.
pub fn steep_image(rng: &mut ChaCha8Rng, w: usize, h: usize) -> GrayImage<f64> {
    let slope_x = rng.random_range(1.5..3.0);
    let slope_y = rng.random_range(-1.0..1.0);
    let wobble: Vec<f64> = (0..w * h).map(|_| rng.random_range(-0.5..0.5)).collect();
    GrayImage::from_fn(w, h, |x, y| 20.0 + slope_x * x as f64 + slope_y * y as f64 + wobble[y * w + x]).unwrap()
}
