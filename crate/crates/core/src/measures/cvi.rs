//! Internal cluster validity indices used as separability measures.

use super::{mean_pairwise, MeasureId, MeasureParams, MeasureValue};
use crate::dataset::{sq_dist, Dataset};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_CVNN_K: usize = 10;

fn with_metric(dm: &DistanceMatrix) -> MeasureParams {
    MeasureParams {
        metric: Some(dm.metric()),
        ..Default::default()
    }
}

/// `Dunn / (1 + Dunn)` where Dunn is the smallest between-class distance
/// over the largest class diameter.
pub fn dunn_star(ds: &Dataset, dm: &DistanceMatrix) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    let n = ds.n();
    let (mut sep, mut comp) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        let row = dm.row(i);
        let ci = ds.class_of(i);
        for (j, &d) in row.iter().enumerate().skip(i + 1) {
            if ds.class_of(j) == ci {
                comp = comp.max(d);
            } else {
                sep = sep.min(d);
            }
        }
    }
    if comp == 0.0 {
        return Err(Error::Degenerate {
            measure: "dunn",
            reason: "maximum class diameter is zero",
        });
    }
    let dunn = sep / comp;
    Ok(MeasureValue::new(MeasureId::Dunn, dunn / (1.0 + dunn), with_metric(dm)))
}

/// `CH** / (1 + CH**)` with `CH**` the between-center over within-class
/// sums of squares (no correction for the number of classes).
pub fn ch_star(ds: &Dataset) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    let center = ds.center();
    let summaries = ds.summaries();
    let between: f64 = summaries
        .iter()
        .map(|s| s.size as f64 * sq_dist(&s.center, &center))
        .sum();
    let within: f64 = summaries.iter().map(|s| s.scatter).sum();
    if within == 0.0 {
        return Err(Error::Degenerate {
            measure: "ch",
            reason: "within-class dispersion is zero",
        });
    }
    let ch = between / within;
    Ok(MeasureValue::new(
        MeasureId::Ch,
        ch / (1.0 + ch),
        MeasureParams {
            metric: Some(crate::Metric::Euclidean),
            ..Default::default()
        },
    ))
}

/// `1 / (1 + DB)`.
pub fn db_star(ds: &Dataset) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    let s = ds.summaries();
    let k = s.len();
    let mut total = 0.0;
    for i in 0..k {
        let mut worst = f64::NEG_INFINITY;
        for j in 0..k {
            if i == j {
                continue;
            }
            let delta = sq_dist(&s[i].center, &s[j].center).sqrt();
            if delta == 0.0 {
                return Err(Error::Degenerate {
                    measure: "db",
                    reason: "two class centers coincide",
                });
            }
            worst = worst.max((s[i].mean_radius + s[j].mean_radius) / delta);
        }
        total += worst;
    }
    let db = total / k as f64;
    Ok(MeasureValue::new(
        MeasureId::Db,
        1.0 / (1.0 + db),
        MeasureParams {
            metric: Some(crate::Metric::Euclidean),
            ..Default::default()
        },
    ))
}

/// `(Sil + 1) / 2` with Sil the mean over classes of the mean silhouette
/// width. Points with `max(a, b) = 0` get width 0.
pub fn silhouette_star(ds: &Dataset, dm: &DistanceMatrix) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    ds.require_class_size(2)?;
    let k = ds.num_classes();
    let sizes: Vec<f64> = (0..k).map(|c| ds.class_size(c) as f64).collect();
    let mut class_sum = vec![0.0; k];
    let mut sums = vec![0.0; k];
    for i in 0..ds.n() {
        let ci = ds.class_of(i);
        sums.iter_mut().for_each(|s| *s = 0.0);
        for (j, &dij) in dm.row(i).iter().enumerate() {
            sums[ds.class_of(j)] += dij;
        }
        let a = sums[ci] / (sizes[ci] - 1.0);
        let b = (0..k)
            .filter(|&c| c != ci)
            .map(|c| sums[c] / sizes[c])
            .fold(f64::INFINITY, f64::min);
        let m = a.max(b);
        class_sum[ci] += if m > 0.0 { (b - a) / m } else { 0.0 };
    }
    let sil = class_sum.iter().zip(&sizes).map(|(s, n)| s / n).sum::<f64>() / k as f64;
    Ok(MeasureValue::new(MeasureId::Sil, (sil + 1.0) / 2.0, with_metric(dm)))
}

/// `1 / (1 + Comp* + Sep)` where Sep is the largest per-class mean share of
/// foreign points among the `k` nearest neighbors (query point excluded) and
/// Comp* is the mean within-class pairwise distance relative to the overall
/// mean pairwise distance.
pub fn cvnn_star(ds: &Dataset, dm: &DistanceMatrix, k: usize) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    ds.require_class_size(2)?;
    let n = ds.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "cvnn needs 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    let nc = ds.num_classes();
    let mut foreign = vec![0usize; nc];
    for i in 0..n {
        let ci = ds.class_of(i);
        foreign[ci] += dm
            .knn(i, k, None)?
            .into_iter()
            .filter(|&j| ds.class_of(j) != ci)
            .count();
    }
    let sep = (0..nc)
        .map(|c| foreign[c] as f64 / (k * ds.class_size(c)) as f64)
        .fold(0.0, f64::max);

    let all: Vec<usize> = (0..n).collect();
    let overall = mean_pairwise(dm, &all);
    if overall == 0.0 {
        return Err(Error::Degenerate {
            measure: "cvnn",
            reason: "all points coincide",
        });
    }
    let within = (0..nc).map(|c| mean_pairwise(dm, ds.members(c))).sum::<f64>() / nc as f64;
    let comp = within / overall;
    Ok(MeasureValue::new(
        MeasureId::Cvnn,
        1.0 / (1.0 + comp + sep),
        MeasureParams {
            metric: Some(dm.metric()),
            k: Some(k),
            ..Default::default()
        },
    ))
}
