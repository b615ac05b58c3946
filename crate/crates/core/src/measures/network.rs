//! Measures read off the pruned ε-NN graph.

use super::{MeasureId, MeasureParams, MeasureValue};
use crate::dataset::Dataset;
use crate::distance::DistanceMatrix;
use crate::error::Result;
use crate::graph::EpsGraph;

pub const DEFAULT_NETWORK_EPS: f64 = 0.15;

fn params(dm: &DistanceMatrix, eps: f64) -> MeasureParams {
    MeasureParams {
        metric: Some(dm.metric()),
        eps: Some(eps),
        ..Default::default()
    }
}

fn pruned(ds: &Dataset, dm: &DistanceMatrix, eps: f64) -> Result<EpsGraph> {
    EpsGraph::build(dm, eps, Some(ds.class_indices()), true)
}

/// `2|E| / (n(n−1))` of the pruned graph.
pub fn density(ds: &Dataset, dm: &DistanceMatrix, eps: f64) -> Result<MeasureValue> {
    let n = ds.n();
    if n < 2 {
        return Err(crate::Error::InvalidParameter(
            "density needs at least two points".into(),
        ));
    }
    let g = pruned(ds, dm, eps)?;
    let value = 2.0 * g.edge_count() as f64 / (n * (n - 1)) as f64;
    Ok(MeasureValue::new(MeasureId::Density, value, params(dm, eps)))
}

/// Mean local clustering coefficient of the pruned graph; vertices with
/// fewer than two neighbors count as 0.
pub fn cls_coef(ds: &Dataset, dm: &DistanceMatrix, eps: f64) -> Result<MeasureValue> {
    let n = ds.n();
    let g = pruned(ds, dm, eps)?;
    let mut adj = vec![false; n * n];
    for (i, nb) in g.adjacency.iter().enumerate() {
        for &j in nb {
            adj[i * n + j] = true;
        }
    }
    let mut total = 0.0;
    for nb in &g.adjacency {
        let k = nb.len();
        if k < 2 {
            continue;
        }
        let mut links = 0usize;
        for (a, &j) in nb.iter().enumerate() {
            let row = &adj[j * n..(j + 1) * n];
            links += nb[a + 1..].iter().filter(|&&l| row[l]).count();
        }
        total += 2.0 * links as f64 / (k * (k - 1)) as f64;
    }
    Ok(MeasureValue::new(MeasureId::ClsCoef, total / n as f64, params(dm, eps)))
}
