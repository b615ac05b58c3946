//! Brute-force reference implementations and random data helpers shared by
//! the integration suites. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use dcsi_core::{DistanceMatrix, Metric};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Builds a symmetric matrix from the upper triangle, row by row.
pub fn matrix_from_upper(n: usize, upper: &[f64]) -> DistanceMatrix {
    let mut values = vec![0.0; n * n];
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            values[i * n + j] = upper[k];
            values[j * n + i] = upper[k];
            k += 1;
        }
    }
    DistanceMatrix::from_values(Metric::Euclidean, n, values).unwrap()
}

/// Decodes a Prüfer sequence into the edge list of a labeled tree on `n` nodes.
fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Minimum total weight and minimum bottleneck weight over every spanning
/// tree of the complete graph, by enumerating all `n^(n-2)` labeled trees.
pub fn spanning_tree_oracle(dm: &DistanceMatrix) -> (f64, f64) {
    let n = dm.n();
    assert!(n >= 2);
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let (mut best_total, mut best_bottleneck) = (f64::INFINITY, f64::INFINITY);
    loop {
        let edges = prufer_edges(&seq, n);
        let total: f64 = edges.iter().map(|&(a, b)| dm.get(a, b)).sum();
        let bottleneck = edges.iter().map(|&(a, b)| dm.get(a, b)).fold(0.0, f64::max);
        best_total = best_total.min(total);
        best_bottleneck = best_bottleneck.min(bottleneck);
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == len {
                return (best_total, best_bottleneck);
            }
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

/// ARI from the four pair counts over all `n(n−1)/2` point pairs.
pub fn ari_by_pairs(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let (mut both, mut only_a, mut only_b, mut neither) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            match (a[i] == a[j], b[i] == b[j]) {
                (true, true) => both += 1.0,
                (true, false) => only_a += 1.0,
                (false, true) => only_b += 1.0,
                (false, false) => neither += 1.0,
            }
        }
    }
    let num = 2.0 * (neither * both - only_a * only_b);
    let den = (neither + only_a) * (only_a + both) + (neither + only_b) * (only_b + both);
    if den == 0.0 {
        1.0
    } else {
        num / den
    }
}

/// `sup |F_a − F_b|` evaluated at every pooled sample point by counting.
pub fn ks_by_counting(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    a.iter()
        .chain(b)
        .map(|&x| {
            let fa = a.iter().filter(|&&v| v <= x).count() as f64 / na;
            let fb = b.iter().filter(|&&v| v <= x).count() as f64 / nb;
            (fa - fb).abs()
        })
        .fold(0.0, f64::max)
}

/// Separation and per-class connectedness for two classes, recomputed
/// from the raw matrix: radius from a full sort, core points by counting,
/// connectedness as the largest minimax path distance between core points.
pub struct DcsiParts {
    pub eps: [f64; 2],
    pub core: [Vec<usize>; 2],
    pub sep: f64,
    pub conn: [f64; 2],
}

pub fn dcsi_parts(dm: &DistanceMatrix, labels: &[usize], min_pts: usize) -> DcsiParts {
    let members: [Vec<usize>; 2] = [0, 1].map(|c| (0..labels.len()).filter(|&i| labels[i] == c).collect());
    let eps = [0, 1].map(|c| {
        let m = &members[c];
        let mut kth: Vec<f64> = m
            .iter()
            .map(|&i| {
                let mut d: Vec<f64> = m.iter().filter(|&&j| j != i).map(|&j| dm.get(i, j)).collect();
                d.sort_by(|x, y| x.partial_cmp(y).unwrap());
                d[2 * min_pts - 1]
            })
            .collect();
        kth.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let k = kth.len();
        if k % 2 == 1 {
            kth[k / 2]
        } else {
            (kth[k / 2 - 1] + kth[k / 2]) / 2.0
        }
    });
    let core = [0, 1].map(|c| {
        members[c]
            .iter()
            .copied()
            .filter(|&i| members[c].iter().filter(|&&j| j != i && dm.get(i, j) <= eps[c]).count() >= min_pts)
            .collect::<Vec<usize>>()
    });
    let mut sep = f64::INFINITY;
    for &i in &core[0] {
        for &j in &core[1] {
            sep = sep.min(dm.get(i, j));
        }
    }
    let conn = [0, 1].map(|c| {
        let v = &core[c];
        let m = v.len();
        // minimax path lengths, Floyd–Warshall style
        let mut w: Vec<Vec<f64>> = (0..m).map(|a| (0..m).map(|b| dm.get(v[a], v[b])).collect()).collect();
        for k in 0..m {
            for a in 0..m {
                for b in 0..m {
                    let via = w[a][k].max(w[k][b]);
                    if via < w[a][b] {
                        w[a][b] = via;
                    }
                }
            }
        }
        w.iter().flatten().copied().fold(0.0, f64::max)
    });
    DcsiParts { eps, core, sep, conn }
}

/// Row-major points from isotropic Gaussians around the given centers.
pub fn gaussian_classes(
    centers: &[Vec<f64>],
    per_class: &[usize],
    sigma: f64,
    seed: u64,
) -> (Vec<Vec<f64>>, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (c, (center, &m)) in centers.iter().zip(per_class).enumerate() {
        for _ in 0..m {
            rows.push(
                center
                    .iter()
                    .map(|&x| x + sigma * rng.sample::<f64, _>(StandardNormal))
                    .collect(),
            );
            labels.push(format!("class{c}"));
        }
    }
    (rows, labels)
}

/// Random centers in `[0, spread]^dim`.
pub fn random_centers(k: usize, dim: usize, spread: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| (0..dim).map(|_| spread * rng.random::<f64>()).collect())
        .collect()
}

/// Sample values that are either small integers (many ties) or continuous.
pub fn sample_values(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop_oneof![
        prop::collection::vec((0i32..8).prop_map(f64::from), 1..=max_len),
        prop::collection::vec(-100.0f64..100.0, 1..=max_len),
    ]
}
