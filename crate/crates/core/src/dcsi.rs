//! Density cluster separability index.
//!
//! Each class is reduced to its *core points*: members with at least
//! `min_pts` other members of the same class within distance `ε_i`.
//! Separation between two classes is the smallest distance between their
//! core points; connectedness of a class is the largest edge of a minimum
//! spanning tree over its core points. With `q = sep / conn` the index is
//! `q / (1 + q)`, which lies in `[0, 1)` and equals `0.5` when `sep == conn`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::dataset::Dataset;
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{build_mst, Mst};
use crate::stats;

pub const DEFAULT_MIN_PTS: usize = 5;
/// Preset for large or embedding-scale data.
pub const EMBEDDING_MIN_PTS: usize = 50;

/// Per-class core-point parameters, indexed by class index.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreParams {
    pub min_pts: Vec<usize>,
    pub eps: Vec<f64>,
}

impl CoreParams {
    pub fn uniform(num_classes: usize, min_pts: usize, eps: f64) -> Self {
        Self {
            min_pts: vec![min_pts; num_classes],
            eps: vec![eps; num_classes],
        }
    }

    fn validate(&self, ds: &Dataset) -> Result<()> {
        let k = ds.num_classes();
        if self.min_pts.len() != k || self.eps.len() != k {
            return Err(Error::InvalidParameter(format!(
                "core parameters given for {} / {} classes, data has {k}",
                self.min_pts.len(),
                self.eps.len()
            )));
        }
        if let Some(c) = self.eps.iter().position(|e| !(*e > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "eps for class `{}` must be positive",
                ds.classes()[c]
            )));
        }
        Ok(())
    }
}

/// How `ε_i` and `MinPts` are chosen. Explicit per-class values win over a
/// global value, which wins over the neighbor-distance heuristic.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreConfig {
    pub min_pts: usize,
    pub min_pts_per_class: BTreeMap<String, usize>,
    /// Quantile of the within-class `(2·MinPts)`-NN distances; 0.5 is the median rule.
    pub eps_quantile: f64,
    pub eps_global: Option<f64>,
    pub eps_per_class: BTreeMap<String, f64>,
}

impl Default for CoreConfig {
    fn default() -> Self {
        Self {
            min_pts: DEFAULT_MIN_PTS,
            min_pts_per_class: BTreeMap::new(),
            eps_quantile: 0.5,
            eps_global: None,
            eps_per_class: BTreeMap::new(),
        }
    }
}

impl CoreConfig {
    pub fn with_min_pts(min_pts: usize) -> Self {
        Self {
            min_pts,
            ..Self::default()
        }
    }

    pub fn resolve(&self, ds: &Dataset, dm: &DistanceMatrix) -> Result<CoreParams> {
        for name in self.min_pts_per_class.keys().chain(self.eps_per_class.keys()) {
            if ds.class_index(name).is_none() {
                return Err(Error::UnknownClass(name.clone()));
            }
        }
        if !(self.eps_quantile > 0.0 && self.eps_quantile < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "eps quantile must lie in (0, 1), got {}",
                self.eps_quantile
            )));
        }
        let mut params = CoreParams {
            min_pts: Vec::with_capacity(ds.num_classes()),
            eps: Vec::with_capacity(ds.num_classes()),
        };
        for (c, name) in ds.classes().iter().enumerate() {
            let min_pts = self.min_pts_per_class.get(name).copied().unwrap_or(self.min_pts);
            let eps = match (self.eps_per_class.get(name), self.eps_global) {
                (Some(&e), _) | (None, Some(e)) => e,
                // every point is core regardless of the radius
                (None, None) if min_pts == 0 => f64::INFINITY,
                (None, None) => eps_quantile(ds, dm, c, min_pts, self.eps_quantile)?,
            };
            params.min_pts.push(min_pts);
            params.eps.push(eps);
        }
        params.validate(ds)?;
        Ok(params)
    }
}

/// Median distance of the members of class `c` to their `(2·min_pts)`-th
/// nearest neighbor within the class.
pub fn eps_heuristic(ds: &Dataset, dm: &DistanceMatrix, c: usize, min_pts: usize) -> Result<f64> {
    eps_quantile(ds, dm, c, min_pts, 0.5)
}

/// `q`-quantile variant of [`eps_heuristic`].
pub fn eps_quantile(ds: &Dataset, dm: &DistanceMatrix, c: usize, min_pts: usize, q: f64) -> Result<f64> {
    if min_pts == 0 {
        return Err(Error::InvalidParameter("the eps heuristic needs min_pts >= 1".into()));
    }
    let members = ds.members(c);
    let k = 2 * min_pts;
    if members.len() < k + 1 {
        return Err(Error::ClassTooSmall {
            class: ds.classes()[c].clone(),
            size: members.len(),
            required: k + 1,
        });
    }
    let kth: Vec<f64> = members
        .iter()
        .map(|&i| dm.kth_distance(i, k, Some(members)))
        .collect::<Result<_>>()?;
    Ok(stats::quantile(&kth, q))
}

/// Core points of every class.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreSet {
    pub classes: Vec<String>,
    /// Ascending point indices of the core points of each class.
    pub core: Vec<Vec<usize>>,
    pub params: CoreParams,
}

impl CoreSet {
    pub fn is_core(&self, i: usize, class: usize) -> bool {
        self.core[class].binary_search(&i).is_ok()
    }

    /// Per-point flags in data set order.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for set in &self.core {
            for &i in set {
                mask[i] = true;
            }
        }
        mask
    }
}

/// `x ∈ C_i` is core iff at least `MinPts` members of `C_i \ {x}` lie
/// within distance `≤ ε_i`. Neighborhoods never cross classes.
pub fn core_points(ds: &Dataset, dm: &DistanceMatrix, params: &CoreParams) -> Result<CoreSet> {
    params.validate(ds)?;
    let core = (0..ds.num_classes())
        .map(|c| {
            let members = ds.members(c);
            let (eps, min_pts) = (params.eps[c], params.min_pts[c]);
            members
                .iter()
                .copied()
                .filter(|&x| {
                    if min_pts == 0 {
                        return true;
                    }
                    let row = dm.row(x);
                    let mut count = 0;
                    for &y in members {
                        if y != x && row[y] <= eps {
                            count += 1;
                            if count >= min_pts {
                                return true;
                            }
                        }
                    }
                    false
                })
                .collect()
        })
        .collect();
    Ok(CoreSet {
        classes: ds.classes().to_vec(),
        core,
        params: params.clone(),
    })
}

fn require_core(cs: &CoreSet, c: usize, required: usize) -> Result<&[usize]> {
    let set = &cs.core[c];
    if set.len() < required {
        return Err(Error::TooFewCorePoints {
            class: cs.classes[c].clone(),
            found: set.len(),
            required,
        });
    }
    Ok(set)
}

/// Smallest distance between a core point of class `i` and one of class `j`.
pub fn separation(dm: &DistanceMatrix, cs: &CoreSet, i: usize, j: usize) -> Result<f64> {
    let a = require_core(cs, i, 1)?;
    let b = require_core(cs, j, 1)?;
    let mut best = f64::INFINITY;
    for &x in a {
        let row = dm.row(x);
        for &y in b {
            best = best.min(row[y]);
        }
    }
    Ok(best)
}

/// Minimum spanning tree over the core points of class `c`.
pub fn connectedness_tree(dm: &DistanceMatrix, cs: &CoreSet, c: usize) -> Result<Mst> {
    let set = require_core(cs, c, 2)?;
    build_mst(dm, set)
}

/// Largest edge of the minimum spanning tree over the core points of class `c`.
pub fn connectedness(dm: &DistanceMatrix, cs: &CoreSet, c: usize) -> Result<f64> {
    connectedness_tree(dm, cs, c)?.max_edge()
}

/// Marks the two limits of `q / (1 + q)` that need a convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Degeneracy {
    #[default]
    None,
    /// `conn == 0 < sep`: reported as 1, the supremum of the range.
    ZeroConnectedness,
    /// `conn == 0 == sep`: reported as 0.
    Coincident,
}

/// Maps a (separation, connectedness) pair to `(q, index, degeneracy)`.
pub fn ratio_index(sep: f64, conn: f64) -> (f64, f64, Degeneracy) {
    if conn > 0.0 {
        let q = sep / conn;
        (q, q / (1.0 + q), Degeneracy::None)
    } else if sep > 0.0 {
        (f64::INFINITY, 1.0, Degeneracy::ZeroConnectedness)
    } else {
        (0.0, 0.0, Degeneracy::Coincident)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseDcsi {
    pub class_i: usize,
    pub class_j: usize,
    pub sep: f64,
    pub conn_i: f64,
    pub conn_j: f64,
    /// `max(conn_i, conn_j)`.
    pub conn: f64,
    pub q: f64,
    pub dcsi: f64,
    pub degenerate: Degeneracy,
}

/// Pairwise index from precomputed core points.
pub fn pairwise_from_core(dm: &DistanceMatrix, cs: &CoreSet, i: usize, j: usize) -> Result<PairwiseDcsi> {
    let wrap = |e| Error::Pair(cs.classes[i].clone(), cs.classes[j].clone(), Box::new(e));
    let sep = separation(dm, cs, i, j).map_err(wrap)?;
    let conn_i = connectedness(dm, cs, i).map_err(wrap)?;
    let conn_j = connectedness(dm, cs, j).map_err(wrap)?;
    Ok(assemble(i, j, sep, conn_i, conn_j))
}

fn assemble(i: usize, j: usize, sep: f64, conn_i: f64, conn_j: f64) -> PairwiseDcsi {
    let conn = conn_i.max(conn_j);
    let (q, dcsi, degenerate) = ratio_index(sep, conn);
    PairwiseDcsi {
        class_i: i,
        class_j: j,
        sep,
        conn_i,
        conn_j,
        conn,
        q,
        dcsi,
        degenerate,
    }
}

pub fn dcsi_pairwise(
    ds: &Dataset,
    dm: &DistanceMatrix,
    params: &CoreParams,
    i: usize,
    j: usize,
) -> Result<PairwiseDcsi> {
    if i == j || i >= ds.num_classes() || j >= ds.num_classes() {
        return Err(Error::InvalidParameter(format!("invalid class pair ({i}, {j})")));
    }
    let cs = core_points(ds, dm, params)?;
    pairwise_from_core(dm, &cs, i, j)
}

/// Ways of collapsing pairwise results into one value for `K > 2` classes.
///
/// `G1*` summarize the pairwise indices. `G2*` summarize the pairwise
/// separations and the pairwise connectedness values `max(conn_i, conn_j)`
/// and apply `q / (1 + q)` to the summaries; `G2MinMax` uses the smallest
/// separation and the largest connectedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MulticlassVariant {
    #[default]
    G1Mean,
    G1Median,
    G1Min,
    G2Mean,
    G2Median,
    G2MinMax,
}

impl MulticlassVariant {
    pub const ALL: [MulticlassVariant; 6] = [
        Self::G1Mean,
        Self::G1Median,
        Self::G1Min,
        Self::G2Mean,
        Self::G2Median,
        Self::G2MinMax,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::G1Mean => "g1_mean",
            Self::G1Median => "g1_median",
            Self::G1Min => "g1_min",
            Self::G2Mean => "g2_mean",
            Self::G2Median => "g2_median",
            Self::G2MinMax => "g2_minmax",
        }
    }
}

impl fmt::Display for MulticlassVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MulticlassVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown multi-class variant `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MulticlassDcsiReport {
    pub core: CoreSet,
    /// Connectedness of every class, indexed by class.
    pub conn_per_class: Vec<f64>,
    /// All unordered pairs `(i, j)`, `i < j`, in lexicographic order.
    pub pairs: Vec<PairwiseDcsi>,
    pub g1_mean: f64,
    pub g1_median: f64,
    pub g1_min: f64,
    pub g2_mean: f64,
    pub g2_median: f64,
    pub g2_minmax: f64,
}

impl MulticlassDcsiReport {
    pub fn value(&self, variant: MulticlassVariant) -> f64 {
        match variant {
            MulticlassVariant::G1Mean => self.g1_mean,
            MulticlassVariant::G1Median => self.g1_median,
            MulticlassVariant::G1Min => self.g1_min,
            MulticlassVariant::G2Mean => self.g2_mean,
            MulticlassVariant::G2Median => self.g2_median,
            MulticlassVariant::G2MinMax => self.g2_minmax,
        }
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&PairwiseDcsi> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.pairs.iter().find(|p| p.class_i == i && p.class_j == j)
    }
}

pub fn dcsi_multiclass(ds: &Dataset, dm: &DistanceMatrix, params: &CoreParams) -> Result<MulticlassDcsiReport> {
    ds.require_classes(2)?;
    let cs = core_points(ds, dm, params)?;
    let k = ds.num_classes();

    // connectedness per class, errors deferred to the first pair that needs it
    let conn: Vec<Result<f64>> = (0..k).map(|c| connectedness(dm, &cs, c)).collect();

    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            let wrap = |e: Error| Error::Pair(cs.classes[i].clone(), cs.classes[j].clone(), Box::new(e));
            let sep = separation(dm, &cs, i, j).map_err(wrap)?;
            let ci = conn[i].clone().map_err(wrap)?;
            let cj = conn[j].clone().map_err(wrap)?;
            pairs.push(assemble(i, j, sep, ci, cj));
        }
    }
    let conn_per_class: Vec<f64> = conn.into_iter().collect::<Result<_>>()?;

    let indices: Vec<f64> = pairs.iter().map(|p| p.dcsi).collect();
    let seps: Vec<f64> = pairs.iter().map(|p| p.sep).collect();
    let conns: Vec<f64> = pairs.iter().map(|p| p.conn).collect();
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    Ok(MulticlassDcsiReport {
        g1_mean: stats::mean(&indices),
        g1_median: stats::median(&indices),
        g1_min: min(&indices),
        g2_mean: ratio_index(stats::mean(&seps), stats::mean(&conns)).1,
        g2_median: ratio_index(stats::median(&seps), stats::median(&conns)).1,
        g2_minmax: ratio_index(min(&seps), max(&conns)).1,
        core: cs,
        conn_per_class,
        pairs,
    })
}

/// Resolves the configuration and evaluates every variant.
pub fn dcsi(ds: &Dataset, dm: &DistanceMatrix, config: &CoreConfig) -> Result<MulticlassDcsiReport> {
    let params = config.resolve(ds, dm)?;
    dcsi_multiclass(ds, dm, &params)
}
