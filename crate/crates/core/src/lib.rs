//! No-reference image fusion quality assessment built on the discrete Del
//! operator.
//!
//! The [`quality`] module scores a fused image against its registered sources as
//! a probability in `[0, 1]`. Around it sit the pieces needed to use and
//! evaluate such a metric: grayscale image I/O, Gaussian smoothing, baseline
//! metrics, reference fusion methods, rank-correlation tooling and seeded
//! synthetic test pairs.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*F64` / `*F32` aliases below name the common instantiations.

pub mod del;
pub mod error;
pub mod fusion;
pub mod image;
pub mod metrics;
pub mod quality;
pub mod ranking;
pub mod scalar;
pub mod smoothing;
pub mod synthetic;

pub use crate::del::{del_transform, saliency, GradientField, SaliencyMap};
pub use crate::error::{Error, Result};
pub use crate::fusion::{fuse_average, fuse_laplacian, fuse_max, fuse_pca, FusionMethod};
pub use crate::image::{load_image, save_image, GrayImage};
pub use crate::metrics::MetricId;
pub use crate::quality::{
    pixel_stats, q_del, q_del_report, q_del_with, std_normal_cdf, well_fused_probability, FusionScore,
    PixelStats, ProbabilityMap, QDelConfig, QDelReport,
};
pub use crate::ranking::{
    final_ranking, leave_one_out_correlations, pearson, rank_row, RankReport, ScoreMatrix, TiePolicy,
};
pub use crate::scalar::Scalar;
pub use crate::smoothing::{gaussian_kernel, smooth, GaussianKernel};
pub use crate::synthetic::{gen_synthetic, SyntheticKind, SyntheticPair};

pub type GrayImageF64 = GrayImage<f64>;
pub type GrayImageF32 = GrayImage<f32>;
pub type GradientFieldF64 = GradientField<f64>;
pub type GradientFieldF32 = GradientField<f32>;
pub type SaliencyMapF64 = SaliencyMap<f64>;
pub type SaliencyMapF32 = SaliencyMap<f32>;
pub type PixelStatsF64 = PixelStats<f64>;
pub type PixelStatsF32 = PixelStats<f32>;
pub type ProbabilityMapF64 = ProbabilityMap<f64>;
pub type ProbabilityMapF32 = ProbabilityMap<f32>;
pub type FusionScoreF64 = FusionScore<f64>;
pub type FusionScoreF32 = FusionScore<f32>;
pub type QDelConfigF64 = QDelConfig<f64>;
pub type ScoreMatrixF64 = ScoreMatrix<f64>;
pub type RankReportF64 = RankReport<f64>;
