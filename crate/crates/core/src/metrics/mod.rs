//! Baseline no-reference fusion metrics and the metric registry.
//!
//! STD, entropy, average gradient and edge intensity look at the fused image
//! only. Mutual information is summed over the sources, SSIM is averaged over
//! them. All registered metrics are larger-is-better.

mod gradient;
mod histogram;
mod ssim;

pub use gradient::{avg_gradient, edge_intensity, sobel_at};
pub use histogram::{entropy_metric, fusion_mi, mutual_information, std_metric, Histogram256};
pub use ssim::{fusion_ssim, ssim, SSIM_C1, SSIM_C2, SSIM_WINDOW_SIGMA};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::{ensure_all_same_dims, GrayImage};
use crate::quality::{q_del_with, QDelConfig};
use crate::ranking::Orientation;
use crate::scalar::Scalar;

/// Stable metric identifiers used on the command line and in CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricId {
    QDel,
    Std,
    Entropy,
    Ag,
    Ei,
    Mi,
    Ssim,
}

impl MetricId {
    pub const ALL: [MetricId; 7] = [
        MetricId::QDel,
        MetricId::Std,
        MetricId::Entropy,
        MetricId::Ag,
        MetricId::Ei,
        MetricId::Mi,
        MetricId::Ssim,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricId::QDel => "qdel",
            MetricId::Std => "std",
            MetricId::Entropy => "entropy",
            MetricId::Ag => "ag",
            MetricId::Ei => "ei",
            MetricId::Mi => "mi",
            MetricId::Ssim => "ssim",
        }
    }

    pub fn orientation(self) -> Orientation {
        Orientation::HigherIsBetter
    }

    /// Scores `fused` against `sources`. Every image must share dimensions.
    pub fn evaluate<T: Scalar>(
        self,
        sources: &[GrayImage<T>],
        fused: &GrayImage<T>,
        config: &QDelConfig<T>,
    ) -> Result<T> {
        ensure_all_same_dims(sources.iter().chain(std::iter::once(fused)))?;
        match self {
            MetricId::QDel => Ok(q_del_with(sources, fused, config)?.value),
            MetricId::Std => Ok(std_metric(fused)),
            MetricId::Entropy => Ok(entropy_metric(fused)),
            MetricId::Ag => Ok(avg_gradient(fused)),
            MetricId::Ei => Ok(edge_intensity(fused)),
            MetricId::Mi => fusion_mi(sources, fused),
            MetricId::Ssim => fusion_ssim(sources, fused),
        }
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownId {
                kind: "metric",
                id: s.to_string(),
                registered: MetricId::ALL.map(MetricId::as_str).join(", "),
            })
    }
}
