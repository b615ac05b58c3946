//! Baseline separability measures, each rescaled to `[0, 1]` with 1 meaning
//! most separable, plus a battery runner that evaluates any selection of
//! them (and the DCSI) on one data set.

mod cvi;
mod dsi;
mod neighborhood;
mod network;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

pub use cvi::{ch_star, cvnn_star, db_star, dunn_star, silhouette_star, DEFAULT_CVNN_K};
pub use dsi::{distance_sets, dsi, ks_statistic, DistanceSets};
pub use neighborhood::{lsc, n1, n2, n3};
pub use network::{cls_coef, density, DEFAULT_NETWORK_EPS};

use crate::dataset::Dataset;
use crate::dcsi::{self, CoreConfig, MulticlassVariant};
use crate::distance::{DistanceMatrix, Metric};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    Dcsi,
    Dunn,
    Ch,
    Db,
    Sil,
    Cvnn,
    Dsi,
    N1,
    N2,
    N3,
    Lsc,
    Density,
    ClsCoef,
}

impl MeasureId {
    pub const ALL: [MeasureId; 13] = [
        Self::Dcsi,
        Self::Dunn,
        Self::Ch,
        Self::Db,
        Self::Sil,
        Self::Cvnn,
        Self::Dsi,
        Self::N1,
        Self::N2,
        Self::N3,
        Self::Lsc,
        Self::Density,
        Self::ClsCoef,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Dcsi => "dcsi",
            Self::Dunn => "dunn",
            Self::Ch => "ch",
            Self::Db => "db",
            Self::Sil => "sil",
            Self::Cvnn => "cvnn",
            Self::Dsi => "dsi",
            Self::N1 => "n1",
            Self::N2 => "n2",
            Self::N3 => "n3",
            Self::Lsc => "lsc",
            Self::Density => "density",
            Self::ClsCoef => "clscoef",
        }
    }

    /// Which distance family the measure reads by default.
    pub fn family(self) -> Family {
        match self {
            Self::N1 | Self::N2 | Self::N3 | Self::Lsc | Self::Density | Self::ClsCoef => Family::Neighborhood,
            _ => Family::Cvi,
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureId {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| crate::Error::InvalidParameter(format!("unknown measure `{s}`")))
    }
}

/// CVIs, DSI and DCSI read Euclidean distances; the neighborhood and
/// network measures read Gower distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cvi,
    Neighborhood,
}

/// Parameters a measure was computed with.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MeasureParams {
    pub metric: Option<Metric>,
    pub k: Option<usize>,
    pub eps: Option<f64>,
    pub min_pts: Option<usize>,
    pub variant: Option<MulticlassVariant>,
}

impl fmt::Display for MeasureParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(m) = self.metric {
            parts.push(format!("metric={m}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(e) = self.eps {
            parts.push(format!("eps={e}"));
        }
        if let Some(m) = self.min_pts {
            parts.push(format!("min_pts={m}"));
        }
        if let Some(v) = self.variant {
            parts.push(format!("variant={v}"));
        }
        f.write_str(&parts.join(";"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureValue {
    pub id: MeasureId,
    pub value: f64,
    pub params: MeasureParams,
    /// Set when a documented degenerate-case convention produced the value.
    pub flag: Option<&'static str>,
}

impl MeasureValue {
    pub(crate) fn new(id: MeasureId, value: f64, params: MeasureParams) -> Self {
        Self {
            id,
            value,
            params,
            flag: None,
        }
    }

    pub(crate) fn flagged(mut self, flag: &'static str) -> Self {
        self.flag = Some(flag);
        self
    }
}

/// Settings for a battery run.
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryConfig {
    pub cvi_metric: Metric,
    pub neighborhood_metric: Metric,
    pub cvnn_k: usize,
    pub network_eps: f64,
    pub core: CoreConfig,
    pub variant: MulticlassVariant,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            cvi_metric: Metric::Euclidean,
            neighborhood_metric: Metric::Gower,
            cvnn_k: DEFAULT_CVNN_K,
            network_eps: DEFAULT_NETWORK_EPS,
            core: CoreConfig::default(),
            variant: MulticlassVariant::G1Mean,
        }
    }
}

/// Lazily computed distance matrices for one data set.
#[derive(Debug)]
pub struct DistanceCache<'a> {
    ds: &'a Dataset,
    euclidean: OnceLock<DistanceMatrix>,
    gower: OnceLock<DistanceMatrix>,
}

impl<'a> DistanceCache<'a> {
    pub fn new(ds: &'a Dataset) -> Self {
        Self {
            ds,
            euclidean: OnceLock::new(),
            gower: OnceLock::new(),
        }
    }

    pub fn dataset(&self) -> &'a Dataset {
        self.ds
    }

    pub fn get(&self, metric: Metric) -> &DistanceMatrix {
        let cell = match metric {
            Metric::Euclidean => &self.euclidean,
            Metric::Gower => &self.gower,
        };
        cell.get_or_init(|| DistanceMatrix::compute(self.ds, metric))
    }
}

/// Evaluates a single measure.
pub fn evaluate(cache: &DistanceCache<'_>, id: MeasureId, cfg: &BatteryConfig) -> Result<MeasureValue> {
    let ds = cache.dataset();
    let metric = match id.family() {
        Family::Cvi => cfg.cvi_metric,
        Family::Neighborhood => cfg.neighborhood_metric,
    };
    let dm = || cache.get(metric);
    match id {
        MeasureId::Dcsi => {
            let dm = dm();
            let params = cfg.core.resolve(ds, dm)?;
            let report = dcsi::dcsi_multiclass(ds, dm, &params)?;
            let mut v = MeasureValue::new(
                id,
                report.value(cfg.variant),
                MeasureParams {
                    metric: Some(metric),
                    min_pts: Some(cfg.core.min_pts),
                    variant: Some(cfg.variant),
                    ..Default::default()
                },
            );
            if report.pairs.iter().any(|p| p.degenerate != dcsi::Degeneracy::None) {
                v = v.flagged("degenerate pair");
            }
            Ok(v)
        }
        MeasureId::Dunn => dunn_star(ds, dm()),
        MeasureId::Ch => ch_star(ds),
        MeasureId::Db => db_star(ds),
        MeasureId::Sil => silhouette_star(ds, dm()),
        MeasureId::Cvnn => cvnn_star(ds, dm(), cfg.cvnn_k),
        MeasureId::Dsi => dsi(ds, dm()),
        MeasureId::N1 => n1(ds, dm()),
        MeasureId::N2 => n2(ds, dm()),
        MeasureId::N3 => n3(ds, dm()),
        MeasureId::Lsc => lsc(ds, dm()),
        MeasureId::Density => density(ds, dm(), cfg.network_eps),
        MeasureId::ClsCoef => cls_coef(ds, dm(), cfg.network_eps),
    }
}

/// Evaluates every selected measure; a failing measure does not stop the others.
pub fn battery(ds: &Dataset, ids: &[MeasureId], cfg: &BatteryConfig) -> Vec<(MeasureId, Result<MeasureValue>)> {
    let cache = DistanceCache::new(ds);
    ids.iter().map(|&id| (id, evaluate(&cache, id, cfg))).collect()
}

/// Mean over pairs `i < j` that cannot fail; used by several measures.
pub(crate) fn mean_pairwise(dm: &DistanceMatrix, idx: &[usize]) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (a, &i) in idx.iter().enumerate() {
        let row = dm.row(i);
        for &j in &idx[a + 1..] {
            sum += row[j];
            count += 1;
        }
    }
    sum / count as f64
}
