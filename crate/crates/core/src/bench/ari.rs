use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::Partition;
use crate::error::{Error, Result};

/// How DBSCAN noise enters the ARI comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseConvention {
    /// Every noise point is its own cluster.
    #[default]
    Singletons,
    /// All noise points form one extra cluster.
    SharedCluster,
}

impl NoiseConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Singletons => "singletons",
            Self::SharedCluster => "shared",
        }
    }

    /// Flattens a partition to plain labels under this convention.
    pub fn labels(self, p: &Partition) -> Vec<usize> {
        let k = p.num_clusters();
        let mut next = k;
        p.ids()
            .iter()
            .map(|id| match (id, self) {
                (Some(c), _) => *c,
                (None, Self::SharedCluster) => k,
                (None, Self::Singletons) => {
                    next += 1;
                    next
                }
            })
            .collect()
    }
}

impl fmt::Display for NoiseConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NoiseConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "singletons" | "singleton" => Ok(Self::Singletons),
            "shared" | "shared_cluster" => Ok(Self::SharedCluster),
            other => Err(Error::InvalidParameter(format!("unknown noise convention `{other}`"))),
        }
    }
}

fn pairs(m: u64) -> f64 {
    (m * m.saturating_sub(1) / 2) as f64
}

/// Hubert–Arabie adjusted Rand index of two labelings.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidParameter("ARI needs at least two points".into()));
    }
    let mut cells: HashMap<(usize, usize), u64> = HashMap::new();
    let mut rows: HashMap<usize, u64> = HashMap::new();
    let mut cols: HashMap<usize, u64> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *cells.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let index: f64 = cells.values().map(|&m| pairs(m)).sum();
    let sum_a: f64 = rows.values().map(|&m| pairs(m)).sum();
    let sum_b: f64 = cols.values().map(|&m| pairs(m)).sum();
    let expected = sum_a * sum_b / pairs(n as u64);
    let max = (sum_a + sum_b) / 2.0;
    if max == expected {
        // both labelings trivial (all one cluster or all singletons)
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// ARI between a DBSCAN partition and class labels.
pub fn ari(p: &Partition, labels: &[usize], convention: NoiseConvention) -> Result<f64> {
    adjusted_rand_index(&convention.labels(p), labels)
}
