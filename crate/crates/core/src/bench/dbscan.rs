//! DBSCAN with neighbor counts that exclude the query point.
//!
//! Border points join the earliest-created cluster that has a core point
//! within `eps`; clusters are created in order of their lowest-index core
//! point. [`DbscanSweeper`] reproduces exactly the same partitions for a
//! whole range of radii from one minimum spanning tree over mutual
//! reachability distances.

use std::collections::VecDeque;

use super::Partition;
use crate::distance::{by_distance, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::{Edge, UnionFind};

fn check(eps: f64, min_pts: usize) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    if min_pts == 0 {
        return Err(Error::InvalidParameter("min_pts must be at least 1".into()));
    }
    Ok(())
}

/// Classic breadth-first DBSCAN.
pub fn dbscan(dm: &DistanceMatrix, eps: f64, min_pts: usize) -> Result<Partition> {
    check(eps, min_pts)?;
    let n = dm.n();
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let row = dm.row(i);
            (0..n).filter(|&j| j != i && row[j] <= eps).collect()
        })
        .collect();
    let core: Vec<bool> = neighbors.iter().map(|nb| nb.len() >= min_pts).collect();

    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if !core[start] || assign[start].is_some() {
            continue;
        }
        assign[start] = Some(next);
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for &q in &neighbors[p] {
                if assign[q].is_none() {
                    assign[q] = Some(next);
                    if core[q] {
                        queue.push_back(q);
                    }
                }
            }
        }
        next += 1;
    }
    Ok(Partition::new(&assign))
}

/// Precomputed state for evaluating DBSCAN at many radii with a fixed `min_pts`.
#[derive(Debug, Clone)]
pub struct DbscanSweeper {
    n: usize,
    min_pts: usize,
    /// Distance to the `min_pts`-th nearest other point (infinite if none).
    core_dist: Vec<f64>,
    /// First `min_pts` neighbors of every point with their distances, nearest first.
    near: Vec<Vec<(usize, f64)>>,
    /// Mutual-reachability MST edges, ascending by weight.
    edges: Vec<Edge>,
}

impl DbscanSweeper {
    pub fn new(dm: &DistanceMatrix, min_pts: usize) -> Result<Self> {
        if min_pts == 0 {
            return Err(Error::InvalidParameter("min_pts must be at least 1".into()));
        }
        let n = dm.n();
        let take = min_pts.min(n.saturating_sub(1));
        let near: Vec<Vec<(usize, f64)>> = (0..n)
            .map(|i| {
                if take == 0 {
                    return Vec::new();
                }
                let row = dm.row(i);
                dm.knn(i, take, None)
                    .expect("pool holds n - 1 points")
                    .into_iter()
                    .map(|j| (j, row[j]))
                    .collect()
            })
            .collect();
        let core_dist: Vec<f64> = near
            .iter()
            .map(|nb| {
                if nb.len() == min_pts {
                    nb[min_pts - 1].1
                } else {
                    f64::INFINITY
                }
            })
            .collect();
        let edges = reachability_mst(dm, &core_dist);
        Ok(Self {
            n,
            min_pts,
            core_dist,
            near,
            edges,
        })
    }

    pub fn min_pts(&self) -> usize {
        self.min_pts
    }

    pub fn core_distances(&self) -> &[f64] {
        &self.core_dist
    }

    pub fn partition_at(&self, eps: f64) -> Result<Partition> {
        check(eps, self.min_pts)?;
        let n = self.n;
        let mut uf = UnionFind::new(n);
        for e in self.edges.iter().take_while(|e| e.weight <= eps) {
            uf.union(e.a, e.b);
        }
        let core: Vec<bool> = self.core_dist.iter().map(|&c| c <= eps).collect();

        // cluster number = creation order = order of lowest core index
        let mut cluster_of_root = vec![usize::MAX; n];
        let mut root_of = vec![usize::MAX; n];
        let mut clusters = 0;
        for i in 0..n {
            if core[i] {
                let r = uf.find(i);
                root_of[i] = r;
                if cluster_of_root[r] == usize::MAX {
                    cluster_of_root[r] = clusters;
                    clusters += 1;
                }
            }
        }
        let assign: Vec<Option<usize>> = (0..n)
            .map(|i| {
                if core[i] {
                    return Some(cluster_of_root[root_of[i]]);
                }
                // a non-core point has fewer than min_pts neighbors within eps,
                // all of which sit in its precomputed nearest list
                self.near[i]
                    .iter()
                    .take_while(|&&(_, d)| d <= eps)
                    .filter(|&&(j, _)| core[j])
                    .map(|&(j, _)| cluster_of_root[root_of[j]])
                    .min()
            })
            .collect();
        Ok(Partition::new(&assign))
    }
}

/// Prim's algorithm on the complete graph weighted by
/// `max(core_dist[a], core_dist[b], d(a, b))`, edges sorted ascending.
fn reachability_mst(dm: &DistanceMatrix, core_dist: &[f64]) -> Vec<Edge> {
    let n = dm.n();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n < 2 {
        return edges;
    }
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let row = dm.row(current);
        let mut best = usize::MAX;
        for j in 0..n {
            if in_tree[j] {
                continue;
            }
            let w = row[j].max(core_dist[current]).max(core_dist[j]);
            if parent[j] == usize::MAX || w < key[j] {
                key[j] = w;
                parent[j] = current;
            }
            if best == usize::MAX || by_distance(&key, j, best).is_lt() {
                best = j;
            }
        }
        in_tree[best] = true;
        let (a, b) = (parent[best].min(best), parent[best].max(best));
        edges.push(Edge {
            a,
            b,
            weight: key[best],
        });
        current = best;
    }
    edges.sort_by(|x, y| x.weight.total_cmp(&y.weight));
    edges
}
