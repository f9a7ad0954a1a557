//! Ranking of fusion methods per metric, leave-one-out rank correlation of
//! metrics, and the averaged final ranking of metrics across experiments.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    HigherIsBetter,
    LowerIsBetter,
}

/// How equal values share ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Tied entries all receive the mean of the ranks they span.
    #[default]
    Average,
    /// Tied entries are ranked in the order they are listed.
    FirstListed,
}

/// Ranks with 1 = best; larger scores rank first, ties averaged.
pub fn rank_row<T: Scalar>(scores: &[T]) -> Result<Vec<T>> {
    rank_row_with(scores, Orientation::HigherIsBetter, TiePolicy::Average)
}

pub fn rank_row_with<T: Scalar>(scores: &[T], orientation: Orientation, ties: TiePolicy) -> Result<Vec<T>> {
    if scores.len() < 2 {
        return Err(Error::TooFewInputs {
            required: 2,
            actual: scores.len(),
        });
    }
    if let Some(index) = scores.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let keys: Vec<Option<T>> = scores.iter().copied().map(Some).collect();
    Ok(rank_keys(&keys, orientation, ties))
}

/// Ranks `keys`; `None` entries rank after every defined value.
fn rank_keys<T: Scalar>(keys: &[Option<T>], orientation: Orientation, ties: TiePolicy) -> Vec<T> {
    let cmp = |a: &Option<T>, b: &Option<T>| -> Ordering {
        match (a, b) {
            (Some(x), Some(y)) => {
                let ord = x.partial_cmp(y).expect("finite keys");
                match orientation {
                    Orientation::HigherIsBetter => ord.reverse(),
                    Orientation::LowerIsBetter => ord,
                }
            }
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
    };
    let mut order: Vec<usize> = (0..keys.len()).collect();
    // Stable: equal keys keep their listing order.
    order.sort_by(|&i, &j| cmp(&keys[i], &keys[j]));

    let mut ranks = vec![T::zero(); keys.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && cmp(&keys[order[start]], &keys[order[end]]) == Ordering::Equal {
            end += 1;
        }
        for (offset, &idx) in order[start..end].iter().enumerate() {
            ranks[idx] = match ties {
                // positions start..end hold ranks start+1..=end
                TiePolicy::Average => T::of((start + 1 + end) as f64 / 2.0),
                TiePolicy::FirstListed => T::of((start + offset + 1) as f64),
            };
        }
        start = end;
    }
    ranks
}

/// Sample Pearson correlation. Fails on a constant vector.
pub fn pearson<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: (x.len(), 1),
            actual: (y.len(), 1),
        });
    }
    if x.len() < 2 {
        return Err(Error::TooFewInputs {
            required: 2,
            actual: x.len(),
        });
    }
    if is_constant(x) || is_constant(y) {
        return Err(Error::UndefinedCorrelation);
    }
    let n = T::of(x.len() as f64);
    let mx = x.iter().copied().sum::<T>() / n;
    let my = y.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == T::zero() || syy == T::zero() {
        return Err(Error::UndefinedCorrelation);
    }
    let r = sxy / (sxx.sqrt() * syy.sqrt());
    Ok(r.max(-T::one()).min(T::one()))
}

fn is_constant<T: Scalar>(v: &[T]) -> bool {
    v.iter().all(|&a| a == v[0])
}

/// For each metric row of `ranks` (metrics x methods), the correlation with
/// the element-wise mean of all other rows. `None` marks an undefined
/// correlation (a constant rank vector on either side).
pub fn leave_one_out_correlations<T: Scalar>(ranks: &[Vec<T>]) -> Result<Vec<Option<T>>> {
    if ranks.len() < 3 {
        return Err(Error::TooFewInputs {
            required: 3,
            actual: ranks.len(),
        });
    }
    let m = ranks[0].len();
    if m < 2 {
        return Err(Error::TooFewInputs { required: 2, actual: m });
    }
    for row in ranks {
        if row.len() != m {
            return Err(Error::DimensionMismatch {
                expected: (m, ranks.len()),
                actual: (row.len(), ranks.len()),
            });
        }
    }
    let others = T::of((ranks.len() - 1) as f64);
    let out = (0..ranks.len())
        .map(|k| {
            let mean_rest: Vec<T> = (0..m)
                .map(|j| {
                    ranks
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != k)
                        .map(|(_, r)| r[j])
                        .sum::<T>()
                        / others
                })
                .collect();
            match pearson(&ranks[k], &mean_rest) {
                Ok(r) => Ok(Some(r)),
                Err(Error::UndefinedCorrelation) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Metric ranking aggregated over experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalRanking<T> {
    /// experiments x metrics; rank of each metric by correlation (1 = best).
    pub per_experiment_ranks: Vec<Vec<T>>,
    /// Mean of each metric's per-experiment ranks.
    pub average_ranks: Vec<T>,
    /// Position of each metric when sorted by average rank, ascending.
    pub final_ranks: Vec<T>,
}

impl<T: Scalar> FinalRanking<T> {
    /// Metric indices from best to worst.
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.final_ranks.len()).collect();
        idx.sort_by(|&a, &b| self.final_ranks[a].partial_cmp(&self.final_ranks[b]).expect("finite ranks"));
        idx
    }
}

/// Ranks metrics by correlation within each experiment (experiments x
/// metrics input), averages each metric's ranks and orders by that average.
pub fn final_ranking<T: Scalar>(per_experiment_correlations: &[Vec<T>], ties: TiePolicy) -> Result<FinalRanking<T>> {
    let keyed: Vec<Vec<Option<T>>> = per_experiment_correlations
        .iter()
        .map(|row| row.iter().copied().map(Some).collect())
        .collect();
    final_ranking_partial(&keyed, ties)
}

/// Like [`final_ranking`], but undefined correlations (`None`) rank below
/// every defined one in their experiment.
pub fn final_ranking_partial<T: Scalar>(
    per_experiment_correlations: &[Vec<Option<T>>],
    ties: TiePolicy,
) -> Result<FinalRanking<T>> {
    let Some(first) = per_experiment_correlations.first() else {
        return Err(Error::TooFewInputs { required: 1, actual: 0 });
    };
    let k = first.len();
    if k == 0 {
        return Err(Error::TooFewInputs { required: 1, actual: 0 });
    }
    let mut per_experiment_ranks = Vec::with_capacity(per_experiment_correlations.len());
    for row in per_experiment_correlations {
        if row.len() != k {
            return Err(Error::DimensionMismatch {
                expected: (k, 1),
                actual: (row.len(), 1),
            });
        }
        if let Some(index) = row.iter().position(|v| v.is_some_and(|c| !c.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        per_experiment_ranks.push(rank_keys(row, Orientation::HigherIsBetter, ties));
    }
    let n = T::of(per_experiment_ranks.len() as f64);
    let average_ranks: Vec<T> = (0..k)
        .map(|j| per_experiment_ranks.iter().map(|r| r[j]).sum::<T>() / n)
        .collect();
    let avg_keys: Vec<Option<T>> = average_ranks.iter().copied().map(Some).collect();
    let final_ranks = rank_keys(&avg_keys, Orientation::LowerIsBetter, ties);
    Ok(FinalRanking {
        per_experiment_ranks,
        average_ranks,
        final_ranks,
    })
}

/// Metrics x methods scores for one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix<T> {
    metric_ids: Vec<String>,
    method_ids: Vec<String>,
    scores: Vec<Vec<T>>,
}

impl<T: Scalar> ScoreMatrix<T> {
    pub fn new(metric_ids: Vec<String>, method_ids: Vec<String>, scores: Vec<Vec<T>>) -> Result<Self> {
        if scores.len() != metric_ids.len() {
            return Err(Error::DimensionMismatch {
                expected: (method_ids.len(), metric_ids.len()),
                actual: (scores.first().map_or(0, Vec::len), scores.len()),
            });
        }
        for (row_idx, row) in scores.iter().enumerate() {
            if row.len() != method_ids.len() {
                return Err(Error::DimensionMismatch {
                    expected: (method_ids.len(), metric_ids.len()),
                    actual: (row.len(), scores.len()),
                });
            }
            if let Some(col) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    index: row_idx * method_ids.len() + col,
                });
            }
        }
        Ok(Self {
            metric_ids,
            method_ids,
            scores,
        })
    }

    pub fn metric_ids(&self) -> &[String] {
        &self.metric_ids
    }

    pub fn method_ids(&self) -> &[String] {
        &self.method_ids
    }

    /// Row per metric, column per method.
    pub fn scores(&self) -> &[Vec<T>] {
        &self.scores
    }

    /// Per-metric method ranks (larger score ranks first).
    pub fn ranks(&self, ties: TiePolicy) -> Result<Vec<Vec<T>>> {
        self.scores
            .iter()
            .map(|row| rank_row_with(row, Orientation::HigherIsBetter, ties))
            .collect()
    }

    /// Pearson correlation between every pair of metric score rows, across
    /// methods. `None` where a row is constant.
    pub fn correlation_matrix(&self) -> Vec<Vec<Option<T>>> {
        self.scores
            .iter()
            .map(|a| self.scores.iter().map(|b| pearson(a, b).ok()).collect())
            .collect()
    }
}

/// Per-experiment ranks and leave-one-out correlations for one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRanks<T> {
    pub ranks: Vec<Vec<T>>,
    pub loo_correlation: Vec<Option<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport<T> {
    pub metric_ids: Vec<String>,
    pub experiments: Vec<ExperimentRanks<T>>,
    pub final_ranking: FinalRanking<T>,
}

/// Runs the full protocol over experiments that share one metric list.
pub fn rank_report<T: Scalar>(matrices: &[ScoreMatrix<T>], ties: TiePolicy) -> Result<RankReport<T>> {
    let Some(first) = matrices.first() else {
        return Err(Error::TooFewInputs { required: 1, actual: 0 });
    };
    let mut experiments = Vec::with_capacity(matrices.len());
    for m in matrices {
        if m.metric_ids != first.metric_ids {
            return Err(Error::InvalidParameter(
                "all experiments must list the same metrics in the same order".into(),
            ));
        }
        let ranks = m.ranks(ties)?;
        let loo_correlation = leave_one_out_correlations(&ranks)?;
        experiments.push(ExperimentRanks { ranks, loo_correlation });
    }
    let correlations: Vec<Vec<Option<T>>> = experiments.iter().map(|e| e.loo_correlation.clone()).collect();
    let final_ranking = final_ranking_partial(&correlations, ties)?;
    Ok(RankReport {
        metric_ids: first.metric_ids.clone(),
        experiments,
        final_ranking,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_row_examples() {
        assert_eq!(rank_row(&[0.68, 0.3, 0.55]).unwrap(), vec![1.0, 3.0, 2.0]);
        assert_eq!(rank_row(&[5.0, 5.0, 1.0]).unwrap(), vec![1.5, 1.5, 3.0]);
        assert_eq!(rank_row(&[2.0; 4]).unwrap(), vec![2.5; 4]);
        assert_eq!(
            rank_row_with(&[5.0, 5.0, 1.0], Orientation::HigherIsBetter, TiePolicy::FirstListed).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
        assert_eq!(
            rank_row_with(&[3.0, 1.0, 2.0], Orientation::LowerIsBetter, TiePolicy::Average).unwrap(),
            vec![3.0, 1.0, 2.0]
        );
    }

    #[test]
    fn rank_row_errors() {
        assert!(rank_row(&[1.0f64]).is_err());
        assert!(matches!(rank_row(&[1.0, f64::NAN]), Err(Error::NonFinite { index: 1 })));
    }

    #[test]
    fn pearson_examples() {
        let x = [1.0f64, 2.0, 3.0];
        assert!((pearson(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &[-1.0, -2.0, -3.0]).unwrap() + 1.0).abs() < 1e-15);
        assert!((pearson(&x, &[1.0, 3.0, 2.0]).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(pearson(&x, &[2.0, 2.0, 2.0]), Err(Error::UndefinedCorrelation)));
        assert!(pearson(&x, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn leave_one_out_examples() {
        // Third metric is the mean of the first two exactly.
        let r = vec![vec![1.0f64, 2.0, 3.0], vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]];
        let c = leave_one_out_correlations(&r).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|v| (v.unwrap() - 1.0).abs() < 1e-15));

        let r = vec![vec![1.0f64, 2.0, 3.0, 4.0], vec![1.0, 2.0, 3.0, 4.0], vec![4.0, 3.0, 2.0, 1.0]];
        let c = leave_one_out_correlations(&r).unwrap();
        assert!((c[2].unwrap() + 1.0).abs() < 1e-15);
        // Others: mean of one identical and one reversed row is constant.
        assert_eq!(c[0], None);
        assert_eq!(c[1], None);

        assert!(leave_one_out_correlations(&r[..2]).is_err());
    }

    #[test]
    fn final_ranking_examples() {
        let one = vec![vec![0.9, 0.1, 0.5]];
        let fr = final_ranking(&one, TiePolicy::Average).unwrap();
        assert_eq!(fr.average_ranks, vec![1.0, 3.0, 2.0]);
        assert_eq!(fr.final_ranks, vec![1.0, 3.0, 2.0]);
        assert_eq!(fr.order(), vec![0, 2, 1]);

        let many = vec![vec![0.9, 0.1, 0.5], vec![0.8, 0.7, 0.75], vec![0.3, -0.2, 0.1]];
        let fr = final_ranking(&many, TiePolicy::Average).unwrap();
        assert_eq!(fr.average_ranks[0], 1.0);
        assert_eq!(fr.final_ranks[0], 1.0);
        assert!(final_ranking::<f64>(&[], TiePolicy::Average).is_err());
    }

    #[test]
    fn undefined_correlations_rank_last() {
        let rows = vec![vec![None, Some(0.2), Some(0.9)]];
        let fr = final_ranking_partial(&rows, TiePolicy::Average).unwrap();
        assert_eq!(fr.per_experiment_ranks[0], vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn score_matrix_validation() {
        let ids = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(ScoreMatrix::new(ids(&["a"]), ids(&["x", "y"]), vec![vec![1.0]]).is_err());
        assert!(ScoreMatrix::new(ids(&["a"]), ids(&["x", "y"]), vec![vec![1.0, f64::NAN]]).is_err());
        let m = ScoreMatrix::new(ids(&["a", "b"]), ids(&["x", "y", "z"]), vec![vec![1.0f64, 2.0, 3.0], vec![3.0, 3.0, 3.0]]).unwrap();
        let c = m.correlation_matrix();
        assert!((c[0][0].unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(c[0][1], None);
        assert_eq!(m.ranks(TiePolicy::Average).unwrap()[1], vec![2.0, 2.0, 2.0]);
    }
}
