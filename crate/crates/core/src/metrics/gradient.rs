//! Gradient-based sharpness indexes computed on the fused image alone.

use crate::image::GrayImage;
use crate::scalar::Scalar;

/// Mean of `sqrt((dx^2 + dy^2) / 2)` with forward differences, over the
/// pixels that have both a right and a lower neighbor.
pub fn avg_gradient<T: Scalar>(fused: &GrayImage<T>) -> T {
    let (w, h) = fused.dims();
    let half = T::of(0.5);
    let mut acc = T::zero();
    for y in 0..h - 1 {
        for x in 0..w - 1 {
            let u = fused.get(x, y);
            let dx = fused.get(x + 1, y) - u;
            let dy = fused.get(x, y + 1) - u;
            acc += ((dx * dx + dy * dy) * half).sqrt();
        }
    }
    acc / T::of(((w - 1) * (h - 1)) as f64)
}

/// Horizontal and vertical 3x3 Sobel responses at `(x, y)`, replicating
/// border pixels.
pub fn sobel_at<T: Scalar>(img: &GrayImage<T>, x: usize, y: usize) -> (T, T) {
    let (x, y) = (x as isize, y as isize);
    let px = |dx: isize, dy: isize| img.get_clamped(x + dx, y + dy);
    let two = T::of(2.0);
    let gx = (px(1, -1) + two * px(1, 0) + px(1, 1)) - (px(-1, -1) + two * px(-1, 0) + px(-1, 1));
    let gy = (px(-1, 1) + two * px(0, 1) + px(1, 1)) - (px(-1, -1) + two * px(0, -1) + px(1, -1));
    (gx, gy)
}

/// Mean Sobel gradient magnitude over every pixel.
pub fn edge_intensity<T: Scalar>(fused: &GrayImage<T>) -> T {
    let (w, h) = fused.dims();
    let mut acc = T::zero();
    for y in 0..h {
        for x in 0..w {
            let (gx, gy) = sobel_at(fused, x, y);
            acc += (gx * gx + gy * gy).sqrt();
        }
    }
    acc / T::of((w * h) as f64)
}
