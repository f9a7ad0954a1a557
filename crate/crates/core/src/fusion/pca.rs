use crate::error::Result;
use crate::image::{ensure_same_dims, GrayImage};
use crate::scalar::Scalar;

/// Weights `(w_a, w_b)` from the principal eigenvector of the 2x2 sample
/// covariance, normalized to sum to one. `None` when both images are constant
/// or the eigenvector components cancel.
pub fn pca_weights<T: Scalar>(a: &GrayImage<T>, b: &GrayImage<T>) -> Result<Option<(T, T)>> {
    ensure_same_dims(a.dims(), b.dims())?;
    let n = T::of(a.len() as f64);
    let (ma, mb) = (a.mean(), b.mean());
    let mut var_a = T::zero();
    let mut var_b = T::zero();
    let mut cov = T::zero();
    for (&x, &y) in a.samples().iter().zip(b.samples()) {
        let (dx, dy) = (x - ma, y - mb);
        var_a += dx * dx;
        var_b += dy * dy;
        cov += dx * dy;
    }
    let (var_a, var_b, cov) = (var_a / n, var_b / n, cov / n);
    if var_a == T::zero() && var_b == T::zero() {
        return Ok(None);
    }

    let half = T::of(0.5);
    let mid = (var_a + var_b) * half;
    let spread = ((var_a - var_b) * half).hypot(cov);
    let lambda = mid + spread;
    // (lambda - var_b, cov) and (cov, lambda - var_a) both span the eigenspace;
    // pick the better conditioned one.
    let (mut v1, mut v2) = if var_a >= var_b {
        (lambda - var_b, cov)
    } else {
        (cov, lambda - var_a)
    };
    if cov == T::zero() && var_a == var_b {
        // Isotropic covariance: every direction is principal.
        v1 = T::one();
        v2 = T::one();
    }
    if v1 < T::zero() && v2 < T::zero() {
        v1 = -v1;
        v2 = -v2;
    }
    let sum = v1 + v2;
    if sum.abs() <= T::of(1e-12) * v1.hypot(v2) {
        return Ok(None);
    }
    Ok(Some((v1 / sum, v2 / sum)))
}

/// PCA-weighted fusion `w_a a + w_b b`, clamped to `[0, 255]`. Falls back to
/// the plain average when [`pca_weights`] is undefined.
pub fn fuse_pca<T: Scalar>(a: &GrayImage<T>, b: &GrayImage<T>) -> Result<GrayImage<T>> {
    let (wa, wb) = pca_weights(a, b)?.unwrap_or((T::of(0.5), T::of(0.5)));
    Ok(a.zip_map(b, |x, y| wa * x + wb * y)?.clamp_to_u8_range())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern() -> GrayImage<f64> {
        GrayImage::from_fn(9, 8, |x, y| ((x * 7 + y * 3) % 11) as f64 * 10.0).unwrap()
    }

    #[test]
    fn identical_inputs_split_evenly() {
        let a = pattern();
        let (wa, wb) = pca_weights(&a, &a).unwrap().unwrap();
        assert!((wa - 0.5).abs() < 1e-12 && (wb - 0.5).abs() < 1e-12);
        let f = fuse_pca(&a, &a).unwrap();
        for (x, y) in a.samples().iter().zip(f.samples()) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn doubled_image_gets_more_weight() {
        // cov = [[v, 2v], [2v, 4v]] has principal eigenvector (1, 2).
        let a = pattern();
        let b = a.map(|v| 2.0 * v).unwrap();
        let (wa, wb) = pca_weights(&a, &b).unwrap().unwrap();
        assert!(wb > wa);
        assert!((wa - 1.0 / 3.0).abs() < 1e-12 && (wb - 2.0 / 3.0).abs() < 1e-12);
        assert!(fuse_pca(&a, &b).unwrap().samples().iter().all(|v| (0.0..=255.0).contains(v)));
    }

    #[test]
    fn uncorrelated_picks_the_higher_variance_axis() {
        let a = GrayImage::from_fn(4, 4, |x, _| if x % 2 == 0 { 0.0 } else { 100.0 }).unwrap();
        let b = GrayImage::from_fn(4, 4, |_, y| if y % 2 == 0 { 0.0 } else { 10.0 }).unwrap();
        assert_eq!(pca_weights(&a, &b).unwrap(), Some((1.0, 0.0)));
        assert_eq!(pca_weights(&b, &a).unwrap(), Some((0.0, 1.0)));
    }

    #[test]
    fn constant_inputs_fall_back_to_average() {
        let a = GrayImage::filled(4, 4, 10.0f64).unwrap();
        let b = GrayImage::filled(4, 4, 30.0f64).unwrap();
        assert_eq!(pca_weights(&a, &b).unwrap(), None);
        assert!(fuse_pca(&a, &b).unwrap().samples().iter().all(|&v| v == 20.0));
    }

    #[test]
    fn anticorrelated_equal_variance_falls_back() {
        let a = pattern();
        let b = a.map(|v| 100.0 - v).unwrap();
        assert_eq!(pca_weights(&a, &b).unwrap(), None);
    }
}
