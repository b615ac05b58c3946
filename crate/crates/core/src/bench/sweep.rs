use super::{ari, DbscanSweeper, NoiseConvention};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_EPS_MIN: f64 = 0.01;
pub const DEFAULT_EPS_MAX: f64 = 10.0;
/// Upper end of the range used for high-dimensional data.
pub const HIGH_DIM_EPS_MAX: f64 = 50.0;
pub const DEFAULT_EPS_STEP: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub eps_min: f64,
    pub eps_max: f64,
    pub step: f64,
    pub min_pts: usize,
    pub convention: NoiseConvention,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            eps_min: DEFAULT_EPS_MIN,
            eps_max: DEFAULT_EPS_MAX,
            step: DEFAULT_EPS_STEP,
            min_pts: crate::dcsi::DEFAULT_MIN_PTS,
            convention: NoiseConvention::default(),
        }
    }
}

impl SweepConfig {
    pub fn high_dim() -> Self {
        Self {
            eps_max: HIGH_DIM_EPS_MAX,
            ..Self::default()
        }
    }

    /// `eps_min + i·step` for every `i` that stays within `eps_max`.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let ok = self.eps_min > 0.0 && self.eps_max > self.eps_min && self.step > 0.0;
        if !ok || !self.eps_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "sweep needs 0 < eps_min < eps_max and step > 0, got [{}, {}] step {}",
                self.eps_min, self.eps_max, self.step
            )));
        }
        let steps = ((self.eps_max - self.eps_min) / self.step + 1e-9).floor() as usize;
        Ok((0..=steps).map(|i| self.eps_min + i as f64 * self.step).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub grid: Vec<f64>,
    pub ari: Vec<f64>,
    pub max_ari: f64,
    /// Smallest radius attaining `max_ari`.
    pub argmax_eps: f64,
    pub min_pts: usize,
    pub convention: NoiseConvention,
}

/// DBSCAN + ARI over the configured radius grid.
pub fn epsilon_sweep(dm: &DistanceMatrix, labels: &[usize], cfg: &SweepConfig) -> Result<SweepResult> {
    sweep_at(dm, labels, cfg.grid()?, cfg.min_pts, cfg.convention)
}

/// DBSCAN + ARI at the given strictly increasing radii.
pub fn sweep_at(
    dm: &DistanceMatrix,
    labels: &[usize],
    grid: Vec<f64>,
    min_pts: usize,
    convention: NoiseConvention,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty eps grid".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter("eps grid must be strictly increasing".into()));
    }
    if labels.len() != dm.n() {
        return Err(Error::LengthMismatch {
            left: dm.n(),
            right: labels.len(),
        });
    }
    let sweeper = DbscanSweeper::new(dm, min_pts)?;
    let ari = grid
        .iter()
        .map(|&eps| ari(&sweeper.partition_at(eps)?, labels, convention))
        .collect::<Result<Vec<f64>>>()?;
    let (mut best, mut max_ari) = (0, ari[0]);
    for (i, &a) in ari.iter().enumerate() {
        if a > max_ari {
            best = i;
            max_ari = a;
        }
    }
    Ok(SweepResult {
        argmax_eps: grid[best],
        grid,
        ari,
        max_ari,
        min_pts,
        convention,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Dataset, Metric};

    #[test]
    fn default_grid_has_1000_points() {
        let g = SweepConfig::default().grid().unwrap();
        assert_eq!(g.len(), 1000);
        assert!((g[999] - 10.0).abs() < 1e-9);
        assert_eq!(SweepConfig::high_dim().grid().unwrap().len(), 5000);
    }

    #[test]
    fn invalid_ranges() {
        for (lo, hi, step) in [(0.0, 1.0, 0.1), (1.0, 1.0, 0.1), (0.1, 1.0, 0.0)] {
            let cfg = SweepConfig {
                eps_min: lo,
                eps_max: hi,
                step,
                ..Default::default()
            };
            assert!(cfg.grid().is_err());
        }
    }

    #[test]
    fn clean_blobs_reach_one() {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for c in 0..2 {
            for i in 0..10 {
                rows.push(vec![c as f64 * 10.0 + i as f64 * 0.1]);
                labels.push(c);
            }
        }
        let ds = Dataset::from_rows(rows, labels.iter().map(|c| c.to_string()).collect()).unwrap();
        let dm = ds.distances(Metric::Euclidean);
        let cfg = SweepConfig {
            eps_max: 2.0,
            ..Default::default()
        };
        let r = epsilon_sweep(&dm, ds.class_indices(), &cfg).unwrap();
        assert_eq!(r.max_ari, 1.0);
        assert!(r.argmax_eps < 1.0);
        assert!(r.ari.iter().filter(|&&a| a == 1.0).count() > 10);
    }
}
