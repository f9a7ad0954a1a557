//! TOML experiment configuration.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use qdel::{FusionMethod, MetricId, QDelConfig, TiePolicy};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    smoothing: RawSmoothing,
    #[serde(default)]
    ranking: RawRanking,
    #[serde(default)]
    experiment: Vec<RawExperiment>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSmoothing {
    sigma: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRanking {
    ties: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    name: String,
    sources: Vec<PathBuf>,
    methods: Option<Vec<String>>,
    metrics: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub name: String,
    pub sources: Vec<PathBuf>,
    pub methods: Vec<FusionMethod>,
    pub metrics: Vec<MetricId>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub qdel: QDelConfig<f64>,
    pub ties: TiePolicy,
    pub experiments: Vec<ExperimentSpec>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            qdel: QDelConfig::default(),
            ties: TiePolicy::Average,
            experiments: Vec::new(),
        }
    }
}

fn parse_ties(s: &str) -> Option<TiePolicy> {
    match s {
        "average" => Some(TiePolicy::Average),
        "first-listed" => Some(TiePolicy::FirstListed),
        _ => None,
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

impl Config {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base).map_err(|e| match e {
            ParseError::Invalid(message) => CliError::Config {
                path: path.to_path_buf(),
                message,
            },
            ParseError::Id(e) => CliError::Core(e),
        })
    }

    /// Parses `text`; relative source paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ParseError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ParseError::Invalid(e.to_string()))?;
        let mut qdel = QDelConfig::default();
        if let Some(sigma) = raw.smoothing.sigma {
            if !(sigma.is_finite() && sigma > 0.0) {
                return Err(ParseError::Invalid(format!("smoothing.sigma must be positive, got {sigma}")));
            }
            qdel.smoothing_sigma = sigma;
        }
        let ties = match raw.ranking.ties.as_deref() {
            None => TiePolicy::Average,
            Some(s) => parse_ties(s).ok_or_else(|| {
                ParseError::Invalid(format!("ranking.ties must be `average` or `first-listed`, got `{s}`"))
            })?,
        };

        let mut seen = HashSet::new();
        let mut experiments = Vec::with_capacity(raw.experiment.len());
        for e in raw.experiment {
            if !valid_name(&e.name) {
                return Err(ParseError::Invalid(format!(
                    "experiment name `{}` must be non-empty and use only letters, digits, `-` and `_`",
                    e.name
                )));
            }
            if !seen.insert(e.name.clone()) {
                return Err(ParseError::Invalid(format!("duplicate experiment name `{}`", e.name)));
            }
            if e.sources.len() != 2 {
                return Err(ParseError::Invalid(format!(
                    "experiment `{}` needs exactly 2 sources, got {}",
                    e.name,
                    e.sources.len()
                )));
            }
            let methods = match e.methods {
                None => FusionMethod::ALL.to_vec(),
                Some(ids) => ids.iter().map(|s| s.parse()).collect::<qdel::Result<Vec<_>>>()?,
            };
            let metrics = match e.metrics {
                None => MetricId::ALL.to_vec(),
                Some(ids) => ids.iter().map(|s| s.parse()).collect::<qdel::Result<Vec<_>>>()?,
            };
            if methods.len() < 2 || metrics.len() < 3 {
                return Err(ParseError::Invalid(format!(
                    "experiment `{}` needs at least 2 methods and 3 metrics",
                    e.name
                )));
            }
            if has_duplicates(&methods) || has_duplicates(&metrics) {
                return Err(ParseError::Invalid(format!("experiment `{}` lists an id twice", e.name)));
            }
            experiments.push(ExperimentSpec {
                name: e.name,
                sources: e.sources.into_iter().map(|p| base.join(p)).collect(),
                methods,
                metrics,
            });
        }
        Ok(Self {
            qdel,
            ties,
            experiments,
        })
    }
}

fn has_duplicates<T: Eq + std::hash::Hash>(ids: &[T]) -> bool {
    let mut seen = HashSet::new();
    !ids.iter().all(|id| seen.insert(id))
}

#[derive(Debug)]
pub enum ParseError {
    Invalid(String),
    Id(qdel::Error),
}

impl From<qdel::Error> for ParseError {
    fn from(e: qdel::Error) -> Self {
        ParseError::Id(e)
    }
}
