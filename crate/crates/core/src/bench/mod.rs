//! DBSCAN, adjusted Rand index, the ε-sweep and rank correlation used to
//! benchmark separability measures against clusterability.

mod ari;
mod dbscan;
mod partition;
mod sweep;

pub use ari::{adjusted_rand_index, ari, NoiseConvention};
pub use dbscan::{dbscan, DbscanSweeper};
pub use partition::Partition;
pub use sweep::{
    epsilon_sweep, sweep_at, SweepConfig, SweepResult, DEFAULT_EPS_MAX, DEFAULT_EPS_MIN, DEFAULT_EPS_STEP,
    HIGH_DIM_EPS_MAX,
};

use crate::error::{Error, Result};
use crate::stats::{average_ranks, pearson};

/// Spearman rank correlation (Pearson correlation of average ranks).
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::InvalidParameter("spearman needs at least three pairs".into()));
    }
    pearson(&average_ranks(xs), &average_ranks(ys)).ok_or(Error::Degenerate {
        measure: "spearman",
        reason: "zero rank variance",
    })
}
