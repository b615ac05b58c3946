//! Pairwise distances and nearest-neighbor queries.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::dataset::{sq_dist, Dataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Euclidean,
    /// Range-normalized Manhattan distance, in `[0, 1]`.
    Gower,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Euclidean => "euclidean",
            Metric::Gower => "gower",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" => Ok(Metric::Euclidean),
            "gower" => Ok(Metric::Gower),
            other => Err(Error::InvalidParameter(format!("unknown metric `{other}`"))),
        }
    }
}

/// Symmetric `n × n` matrix of pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    metric: Metric,
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn compute(ds: &Dataset, metric: Metric) -> Self {
        let n = ds.n();
        let d = ds.dim();
        let mut values = vec![0.0; n * n];
        let inv_range: Vec<f64> = match metric {
            Metric::Euclidean => Vec::new(),
            Metric::Gower => (0..d)
                .map(|j| {
                    let (lo, hi) = (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
                        let v = ds.point(i)[j];
                        (lo.min(v), hi.max(v))
                    });
                    // zero-range features carry no information and contribute 0
                    if hi > lo {
                        1.0 / (hi - lo)
                    } else {
                        0.0
                    }
                })
                .collect(),
        };
        for i in 0..n {
            let a = ds.point(i);
            for j in (i + 1)..n {
                let b = ds.point(j);
                let v = match metric {
                    Metric::Euclidean => sq_dist(a, b).sqrt(),
                    Metric::Gower => {
                        let s: f64 = a
                            .iter()
                            .zip(b)
                            .zip(&inv_range)
                            .map(|((x, y), r)| (x - y).abs() * r)
                            .sum();
                        (s / d as f64).min(1.0)
                    }
                };
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Self { metric, n, values }
    }

    /// Wraps an explicit matrix; checks shape, symmetry, zero diagonal and
    /// non-negativity.
    pub fn from_values(metric: Metric, n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: n * n,
            });
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::InvalidParameter(format!("non-zero diagonal at {i}")));
            }
            for j in (i + 1)..n {
                let v = values[i * n + j];
                if !(v >= 0.0) || v != values[j * n + i] {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i}, {j}) is negative, NaN or asymmetric"
                    )));
                }
            }
        }
        Ok(Self { metric, n, values })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// The `k` nearest points to `i`, ascending by distance with ties broken
    /// by lower index. The pool defaults to all other points; `i` itself is
    /// never returned.
    pub fn knn(&self, i: usize, k: usize, pool: Option<&[usize]>) -> Result<Vec<usize>> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let mut candidates: Vec<usize> = match pool {
            Some(p) => p.iter().copied().filter(|&j| j != i).collect(),
            None => (0..self.n).filter(|&j| j != i).collect(),
        };
        if candidates.len() < k {
            return Err(Error::PoolTooSmall {
                available: candidates.len(),
                requested: k,
            });
        }
        let row = self.row(i);
        let cmp = |a: &usize, b: &usize| by_distance(row, *a, *b);
        if k < candidates.len() {
            candidates.select_nth_unstable_by(k - 1, cmp);
            candidates.truncate(k);
        }
        candidates.sort_unstable_by(cmp);
        Ok(candidates)
    }

    /// Distance from `i` to its `k`-th nearest neighbor within `pool`.
    pub fn kth_distance(&self, i: usize, k: usize, pool: Option<&[usize]>) -> Result<f64> {
        let nn = self.knn(i, k, pool)?;
        Ok(self.get(i, nn[k - 1]))
    }
}

/// Total order on candidate neighbors of a fixed anchor: distance, then index.
#[inline]
pub(crate) fn by_distance(row: &[f64], a: usize, b: usize) -> Ordering {
    row[a].total_cmp(&row[b]).then(a.cmp(&b))
}

impl Dataset {
    /// Shorthand for [`DistanceMatrix::compute`].
    pub fn distances(&self, metric: Metric) -> DistanceMatrix {
        DistanceMatrix::compute(self, metric)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> Dataset {
        let labels: Vec<&str> = xs.iter().map(|_| "a").collect();
        Dataset::from_rows(xs.iter().map(|&x| vec![x]).collect(), labels).unwrap()
    }

    #[test]
    fn single_feature_normalization() {
        let ds = line(&[0.0, 12.0]);
        assert_eq!(ds.distances(Metric::Euclidean).get(0, 1), 12.0);
        assert_eq!(ds.distances(Metric::Gower).get(0, 1), 1.0);
    }

    #[test]
    fn gower_hand_value() {
        let dm = line(&[0.0, 1.0, 12.0]).distances(Metric::Gower);
        assert_eq!(dm.get(0, 1), 1.0 / 12.0);
    }

    #[test]
    fn gower_constant_feature_contributes_zero() {
        let ds = Dataset::from_rows(vec![vec![0.0, 5.0], vec![4.0, 5.0]], vec!["a", "b"]).unwrap();
        assert_eq!(ds.distances(Metric::Gower).get(0, 1), 0.5);
    }

    #[test]
    fn duplicates_have_zero_distance() {
        let dm = line(&[3.0, 3.0, 4.0]).distances(Metric::Euclidean);
        assert_eq!(dm.get(0, 1), 0.0);
    }

    #[test]
    fn knn_on_a_line() {
        let dm = line(&[0.0, 1.0, 2.0, 3.0]).distances(Metric::Euclidean);
        assert_eq!(dm.knn(0, 2, None).unwrap(), vec![1, 2]);
    }

    #[test]
    fn knn_ties_prefer_lower_index() {
        let dm = line(&[0.0, -1.0, 1.0]).distances(Metric::Euclidean);
        assert_eq!(dm.knn(0, 1, None).unwrap(), vec![1]);
        let dm = line(&[0.0, 1.0, -1.0]).distances(Metric::Euclidean);
        assert_eq!(dm.knn(0, 1, None).unwrap(), vec![1]);
    }

    #[test]
    fn knn_pool_exhaustion() {
        let dm = line(&[0.0, 1.0, 2.0, 3.0, 4.0]).distances(Metric::Euclidean);
        let pool = [0, 3, 4];
        assert_eq!(dm.knn(0, 2, Some(&pool)).unwrap(), vec![3, 4]);
        assert_eq!(
            dm.knn(0, 3, Some(&pool)).unwrap_err(),
            Error::PoolTooSmall {
                available: 2,
                requested: 3
            }
        );
    }

    #[test]
    fn from_values_validates() {
        assert!(DistanceMatrix::from_values(Metric::Euclidean, 2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(DistanceMatrix::from_values(Metric::Euclidean, 2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::from_values(Metric::Euclidean, 2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
    }
}
