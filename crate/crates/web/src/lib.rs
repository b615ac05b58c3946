//! Browser bindings: generate a synthetic data set, explain its DCSI, sweep
//! DBSCAN radii and run the measure battery. Every method returns JSON.

use std::collections::BTreeMap;

use dcsi_core::bench::{ari, dbscan, epsilon_sweep, NoiseConvention, SweepConfig};
use dcsi_core::datagen::{generate, GenSpec, Generator};
use dcsi_core::dcsi::{connectedness_tree, dcsi, CoreConfig};
use dcsi_core::measures::{battery, BatteryConfig, MeasureId};
use dcsi_core::{Dataset, DistanceMatrix, Metric};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct PointsView<'a> {
    dim: usize,
    /// First two coordinates of every point.
    x: Vec<f64>,
    y: Vec<f64>,
    labels: &'a [usize],
    classes: &'a [String],
    params: String,
}

#[derive(Serialize)]
struct EdgeView {
    a: usize,
    b: usize,
    weight: f64,
}

#[derive(Serialize)]
struct DcsiView {
    min_pts: usize,
    eps: Vec<f64>,
    core: Vec<bool>,
    sep: f64,
    /// Closest pair of core points from different classes.
    sep_edge: Option<EdgeView>,
    conn: Vec<f64>,
    /// Core-point spanning tree per class.
    mst: Vec<Vec<EdgeView>>,
    bottleneck: Vec<Option<EdgeView>>,
    dcsi: f64,
}

#[derive(Serialize)]
struct SweepView {
    eps: Vec<f64>,
    ari: Vec<f64>,
    max_ari: f64,
    argmax_eps: f64,
}

#[derive(Serialize)]
struct ClusteringView {
    /// Cluster id per point, -1 for noise.
    cluster: Vec<i64>,
    clusters: usize,
    noise: usize,
    ari: f64,
}

#[derive(Serialize)]
struct MeasureView {
    id: &'static str,
    value: Option<f64>,
    error: Option<String>,
}

/// One generated data set with its Euclidean distances.
#[wasm_bindgen]
pub struct Demo {
    spec: GenSpec,
    ds: Dataset,
    dm: DistanceMatrix,
}

impl Demo {
    /// `params` is a JSON object of generator parameters, e.g. `{"d": 3}`.
    pub fn build(generator: &str, seed: u32, params: &str) -> Result<Self, String> {
        let generator: Generator = generator.parse().map_err(|e| format!("{e}"))?;
        let overrides: BTreeMap<String, f64> = if params.trim().is_empty() {
            BTreeMap::new()
        } else {
            serde_json::from_str(params).map_err(|e| format!("parameters: {e}"))?
        };
        let mut spec = GenSpec::new(generator, u64::from(seed));
        for (k, v) in overrides {
            spec = spec.with(&k, v);
        }
        let ds = generate(&spec).map_err(|e| e.to_string())?;
        let dm = ds.distances(Metric::Euclidean);
        Ok(Self { spec, ds, dm })
    }

    pub fn points_value(&self) -> String {
        let second = |i: usize| if self.ds.dim() > 1 { self.ds.point(i)[1] } else { 0.0 };
        to_json(&PointsView {
            dim: self.ds.dim(),
            x: (0..self.ds.n()).map(|i| self.ds.point(i)[0]).collect(),
            y: (0..self.ds.n()).map(second).collect(),
            labels: self.ds.class_indices(),
            classes: self.ds.classes(),
            params: self.spec.describe(),
        })
    }

    pub fn dcsi_value(&self, min_pts: usize) -> Result<String, String> {
        let report = dcsi(&self.ds, &self.dm, &CoreConfig::with_min_pts(min_pts)).map_err(|e| e.to_string())?;
        let cs = &report.core;
        let pair = &report.pairs[0];
        let mut sep_edge: Option<EdgeView> = None;
        for &a in &cs.core[pair.class_i] {
            for &b in &cs.core[pair.class_j] {
                let weight = self.dm.get(a, b);
                if sep_edge.as_ref().is_none_or(|e| weight < e.weight) {
                    sep_edge = Some(EdgeView { a, b, weight });
                }
            }
        }
        let mut mst = Vec::new();
        let mut bottleneck = Vec::new();
        for c in 0..self.ds.num_classes() {
            let tree = connectedness_tree(&self.dm, cs, c).map_err(|e| e.to_string())?;
            bottleneck.push(tree.bottleneck().map(|e| EdgeView {
                a: e.a,
                b: e.b,
                weight: e.weight,
            }));
            mst.push(
                tree.edges
                    .iter()
                    .map(|e| EdgeView {
                        a: e.a,
                        b: e.b,
                        weight: e.weight,
                    })
                    .collect(),
            );
        }
        Ok(to_json(&DcsiView {
            min_pts,
            eps: cs.params.eps.clone(),
            core: cs.mask(self.ds.n()),
            sep: pair.sep,
            sep_edge,
            conn: report.conn_per_class.clone(),
            mst,
            bottleneck,
            dcsi: report.g1_mean,
        }))
    }

    pub fn sweep_value(&self, min_pts: usize, eps_max: f64, step: f64) -> Result<String, String> {
        let cfg = SweepConfig {
            eps_min: step,
            eps_max,
            step,
            min_pts,
            convention: NoiseConvention::Singletons,
        };
        let s = epsilon_sweep(&self.dm, self.ds.class_indices(), &cfg).map_err(|e| e.to_string())?;
        Ok(to_json(&SweepView {
            eps: s.grid,
            ari: s.ari,
            max_ari: s.max_ari,
            argmax_eps: s.argmax_eps,
        }))
    }

    pub fn clustering_value(&self, eps: f64, min_pts: usize) -> Result<String, String> {
        let p = dbscan(&self.dm, eps, min_pts).map_err(|e| e.to_string())?;
        let score = ari(&p, self.ds.class_indices(), NoiseConvention::Singletons).map_err(|e| e.to_string())?;
        Ok(to_json(&ClusteringView {
            cluster: p.ids().iter().map(|c| c.map_or(-1, |c| c as i64)).collect(),
            clusters: p.num_clusters(),
            noise: p.noise_count(),
            ari: score,
        }))
    }

    pub fn measures_value(&self, min_pts: usize) -> String {
        let cfg = BatteryConfig {
            core: CoreConfig::with_min_pts(min_pts),
            ..BatteryConfig::default()
        };
        let rows: Vec<MeasureView> = battery(&self.ds, &MeasureId::ALL, &cfg)
            .into_iter()
            .map(|(id, r)| match r {
                Ok(v) => MeasureView {
                    id: id.as_str(),
                    value: Some(v.value),
                    error: None,
                },
                Err(e) => MeasureView {
                    id: id.as_str(),
                    value: None,
                    error: Some(e.to_string()),
                },
            })
            .collect();
        to_json(&rows)
    }
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(generator: &str, seed: u32, params: &str) -> Result<Demo, JsError> {
        Self::build(generator, seed, params).map_err(|e| JsError::new(&e))
    }

    pub fn points(&self) -> String {
        self.points_value()
    }

    /// Core points, radii, closest core pair, spanning trees and the index.
    pub fn dcsi(&self, min_pts: usize) -> Result<String, JsError> {
        self.dcsi_value(min_pts).map_err(|e| JsError::new(&e))
    }

    /// ARI curve over `step, 2·step, …, eps_max`.
    pub fn sweep(&self, min_pts: usize, eps_max: f64, step: f64) -> Result<String, JsError> {
        self.sweep_value(min_pts, eps_max, step).map_err(|e| JsError::new(&e))
    }

    /// DBSCAN labels at one radius.
    pub fn clustering(&self, eps: f64, min_pts: usize) -> Result<String, JsError> {
        self.clustering_value(eps, min_pts).map_err(|e| JsError::new(&e))
    }

    /// All thirteen measures.
    pub fn measures(&self, min_pts: usize) -> String {
        self.measures_value(min_pts)
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("views serialize")
}
