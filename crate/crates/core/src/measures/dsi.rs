//! Distance-based separability index: per class, the Kolmogorov-Smirnov
//! distance between the intra-class and between-class distance multisets.

use super::{MeasureId, MeasureParams, MeasureValue};
use crate::dataset::Dataset;
use crate::distance::DistanceMatrix;
use crate::error::Result;

/// Intra-class (`icd`) and between-class (`bcd`) distance multisets of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSets {
    pub icd: Vec<f64>,
    pub bcd: Vec<f64>,
}

pub fn distance_sets(ds: &Dataset, dm: &DistanceMatrix, class: usize) -> DistanceSets {
    let members = ds.members(class);
    let mut icd = Vec::with_capacity(members.len() * members.len().saturating_sub(1) / 2);
    let mut bcd = Vec::with_capacity(members.len() * (ds.n() - members.len()));
    for (a, &i) in members.iter().enumerate() {
        let row = dm.row(i);
        icd.extend(members[a + 1..].iter().map(|&j| row[j]));
        bcd.extend((0..ds.n()).filter(|&j| ds.class_of(j) != class).map(|j| row[j]));
    }
    DistanceSets { icd, bcd }
}

/// Two-sample KS statistic `sup_x |F_a(x) − F_b(x)|` with right-continuous
/// empirical CDFs, evaluated at every pooled sample point.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(f64::total_cmp);
    b.sort_unstable_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup = 0.0f64;
    while i < a.len() || j < b.len() {
        // next pooled value; consume every copy of it from both samples
        let x = match (a.get(i), b.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => unreachable!(),
        };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        sup = sup.max((i as f64 / na - j as f64 / nb).abs());
    }
    sup
}

/// Mean over classes of the KS distance between `icd` and `bcd`.
pub fn dsi(ds: &Dataset, dm: &DistanceMatrix) -> Result<MeasureValue> {
    ds.require_classes(2)?;
    ds.require_class_size(2)?;
    let k = ds.num_classes();
    let total: f64 = (0..k)
        .map(|c| {
            let sets = distance_sets(ds, dm, c);
            ks_statistic(&sets.icd, &sets.bcd)
        })
        .sum();
    Ok(MeasureValue::new(
        MeasureId::Dsi,
        total / k as f64,
        MeasureParams {
            metric: Some(dm.metric()),
            ..Default::default()
        },
    ))
}
