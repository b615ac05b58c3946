//! Neighborhood complexity measures, reported as `1 − complexity`.

use super::{MeasureId, MeasureParams, MeasureValue};
use crate::dataset::Dataset;
use crate::distance::DistanceMatrix;
use crate::error::Result;
use crate::graph::build_mst;

fn with_metric(dm: &DistanceMatrix) -> MeasureParams {
    MeasureParams {
        metric: Some(dm.metric()),
        ..Default::default()
    }
}

/// Share of points not incident to a cross-class edge of the MST over all points.
pub fn n1(ds: &Dataset, dm: &DistanceMatrix) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    let all: Vec<usize> = (0..ds.n()).collect();
    let mst = build_mst(dm, &all)?;
    let mut border = vec![false; ds.n()];
    for e in &mst.edges {
        if ds.class_of(e.a) != ds.class_of(e.b) {
            border[e.a] = true;
            border[e.b] = true;
        }
    }
    let count = border.iter().filter(|&&b| b).count();
    Ok(MeasureValue::new(
        MeasureId::N1,
        1.0 - count as f64 / ds.n() as f64,
        with_metric(dm),
    ))
}

/// `1 / (1 + Σ intra-class NN distance / Σ extra-class NN distance)`.
pub fn n2(ds: &Dataset, dm: &DistanceMatrix) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    ds.require_class_size(2)?;
    let (mut intra, mut extra) = (0.0, 0.0);
    for i in 0..ds.n() {
        let ci = ds.class_of(i);
        let (mut same, mut other) = (f64::INFINITY, f64::INFINITY);
        for (j, &d) in dm.row(i).iter().enumerate() {
            if j == i {
                continue;
            }
            if ds.class_of(j) == ci {
                same = same.min(d);
            } else {
                other = other.min(d);
            }
        }
        intra += same;
        extra += other;
    }
    if extra == 0.0 {
        return Ok(MeasureValue::new(MeasureId::N2, 0.0, with_metric(dm))
            .flagged("extra-class nearest-neighbor distances are all zero"));
    }
    Ok(MeasureValue::new(
        MeasureId::N2,
        1.0 / (1.0 + intra / extra),
        with_metric(dm),
    ))
}

/// Leave-one-out accuracy of the 1-NN classifier (ties to the lower index).
pub fn n3(ds: &Dataset, dm: &DistanceMatrix) -> Result<MeasureValue> {
    let n = ds.n();
    if n < 2 {
        return Err(crate::Error::InvalidParameter("n3 needs at least two points".into()));
    }
    let correct = (0..n)
        .filter(|&i| {
            let row = dm.row(i);
            let nn = (0..n)
                .filter(|&j| j != i)
                .min_by(|&a, &b| crate::distance::by_distance(row, a, b))
                .expect("n >= 2");
            ds.class_of(nn) == ds.class_of(i)
        })
        .count();
    Ok(MeasureValue::new(
        MeasureId::N3,
        correct as f64 / n as f64,
        with_metric(dm),
    ))
}

/// `(1/n²) Σ |LS(x)|`, where the local set of `x` holds `x` itself and every
/// point strictly closer to `x` than its nearest foreign point.
pub fn lsc(ds: &Dataset, dm: &DistanceMatrix) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    let n = ds.n();
    let mut total = 0usize;
    for i in 0..n {
        let ci = ds.class_of(i);
        let row = dm.row(i);
        let radius = (0..n)
            .filter(|&j| ds.class_of(j) != ci)
            .map(|j| row[j])
            .fold(f64::INFINITY, f64::min);
        total += 1 + (0..n).filter(|&j| j != i && row[j] < radius).count();
    }
    Ok(MeasureValue::new(
        MeasureId::Lsc,
        total as f64 / (n * n) as f64,
        with_metric(dm),
    ))
}
