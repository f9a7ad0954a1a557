//! Floating-point scalar abstraction shared by every image and map type.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Sample type of images, gradient fields and statistic maps: `f32` or `f64`.
///
/// The numerical tolerances quoted throughout the crate assume `f64`; `f32`
/// is supported for memory-bound batch work where ~1e-5 agreement is enough.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into `Self`, rounding if `Self` is narrower.
    fn of(x: f64) -> Self;

    /// Widens to `f64`.
    fn to_f64_lossless(self) -> f64;
}

impl Scalar for f32 {
    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn to_f64_lossless(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn of(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64_lossless(self) -> f64 {
        self
    }
}

/// Round half up (`floor(x + 0.5)`), then clamp into the 8-bit range.
#[inline]
pub fn quantize_u8<T: Scalar>(value: T) -> u8 {
    let rounded = (value.to_f64_lossless() + 0.5).floor();
    rounded.clamp(0.0, 255.0) as u8
}
