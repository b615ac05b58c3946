//! Density cluster separability index (DCSI), twelve baseline separability
//! measures, a DBSCAN/ARI benchmark harness and seeded synthetic data.
//!
//! ```
//! use dcsi_core::{datagen, dcsi, Metric};
//!
//! let ds = datagen::generate(&datagen::GenSpec::new(datagen::Generator::C, 1)).unwrap();
//! let dm = ds.distances(Metric::Euclidean);
//! let report = dcsi::dcsi(&ds, &dm, &dcsi::CoreConfig::default()).unwrap();
//! assert!(report.g1_mean > 0.8);
//! ```

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod datagen;
pub mod dataset;
pub mod dcsi;
pub mod distance;
pub mod error;
pub mod graph;
pub mod measures;
pub mod stats;

pub use dataset::{ClassSummary, Dataset};
pub use distance::{DistanceMatrix, Metric};
pub use error::{Error, Result};
