//! Reference two-source fusion methods and their registry.

mod pca;
mod pyramid;

pub use pca::{fuse_pca, pca_weights};
pub use pyramid::{
    build_laplacian, expand, fuse_laplacian, reconstruct, reduce, Pyramid, DEFAULT_LEVELS, MIN_LEVEL_SIZE,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

/// Per-pixel `(a + b) / 2`.
pub fn fuse_average<T: Scalar>(a: &GrayImage<T>, b: &GrayImage<T>) -> Result<GrayImage<T>> {
    let half = T::of(0.5);
    a.zip_map(b, |x, y| (x + y) * half)
}

/// Per-pixel maximum.
pub fn fuse_max<T: Scalar>(a: &GrayImage<T>, b: &GrayImage<T>) -> Result<GrayImage<T>> {
    a.zip_map(b, T::max)
}

/// Stable fusion method identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FusionMethod {
    Avg,
    Max,
    Pca,
    Lp,
}

impl FusionMethod {
    pub const ALL: [FusionMethod; 4] = [FusionMethod::Avg, FusionMethod::Max, FusionMethod::Pca, FusionMethod::Lp];

    pub fn as_str(self) -> &'static str {
        match self {
            FusionMethod::Avg => "avg",
            FusionMethod::Max => "max",
            FusionMethod::Pca => "pca",
            FusionMethod::Lp => "lp",
        }
    }

    pub fn fuse<T: Scalar>(self, a: &GrayImage<T>, b: &GrayImage<T>) -> Result<GrayImage<T>> {
        match self {
            FusionMethod::Avg => fuse_average(a, b),
            FusionMethod::Max => fuse_max(a, b),
            FusionMethod::Pca => fuse_pca(a, b),
            FusionMethod::Lp => fuse_laplacian(a, b, DEFAULT_LEVELS),
        }
    }
}

impl fmt::Display for FusionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FusionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FusionMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownId {
                kind: "method",
                id: s.to_string(),
                registered: FusionMethod::ALL.map(FusionMethod::as_str).join(", "),
            })
    }
}
