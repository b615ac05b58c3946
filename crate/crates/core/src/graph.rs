//! Minimum spanning trees (Kruskal) and ε-neighborhood graphs.

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

/// Disjoint-set forest with path compression and union by rank.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Minimum spanning tree over a subset of points. Edge endpoints are point
/// indices with `a < b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mst {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    pub total_weight: f64,
}

impl Mst {
    /// Largest edge weight. For any minimum spanning tree this is the
    /// minimax bottleneck of the vertex set, so it does not depend on how
    /// ties were broken.
    pub fn max_edge(&self) -> Result<f64> {
        if self.vertices.len() < 2 {
            return Err(Error::DegenerateTree);
        }
        Ok(self.edges.iter().map(|e| e.weight).fold(f64::NEG_INFINITY, f64::max))
    }

    /// The edge attaining [`Mst::max_edge`] (first in Kruskal order among equals).
    pub fn bottleneck(&self) -> Option<Edge> {
        self.edges
            .iter()
            .copied()
            .reduce(|best, e| if e.weight > best.weight { e } else { best })
    }
}

/// Kruskal's algorithm on the complete graph over `subset`, weights taken
/// from `dm`. Equal weights are processed in `(lower a, lower b)` order.
pub fn build_mst(dm: &DistanceMatrix, subset: &[usize]) -> Result<Mst> {
    kruskal(subset, |a, b| dm.get(a, b))
}

pub(crate) fn kruskal(subset: &[usize], weight: impl Fn(usize, usize) -> f64) -> Result<Mst> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut vertices = subset.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let m = vertices.len();

    let mut candidates = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            let (a, b) = (vertices[i], vertices[j]);
            candidates.push(Edge {
                a,
                b,
                weight: weight(a, b),
            });
        }
    }
    candidates.sort_unstable_by(|x, y| x.weight.total_cmp(&y.weight).then(x.a.cmp(&y.a)).then(x.b.cmp(&y.b)));

    // union-find runs over local positions
    let local = |p: usize| vertices.binary_search(&p).expect("vertex in subset");
    let mut uf = UnionFind::new(m);
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    let mut total = 0.0;
    for e in candidates {
        if uf.union(local(e.a), local(e.b)) {
            total += e.weight;
            edges.push(e);
            if edges.len() + 1 == m {
                break;
            }
        }
    }
    Ok(Mst {
        vertices,
        edges,
        total_weight: total,
    })
}

/// Graph joining points at distance strictly below `eps`, optionally with
/// every edge between differently labeled points removed.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsGraph {
    pub eps: f64,
    pub adjacency: Vec<Vec<usize>>,
    pub pruned: bool,
}

impl EpsGraph {
    pub fn build(dm: &DistanceMatrix, eps: f64, labels: Option<&[usize]>, prune: bool) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
        }
        if prune && labels.is_none() {
            return Err(Error::InvalidParameter("pruning requires labels".into()));
        }
        let n = dm.n();
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if dm.get(i, j) < eps {
                    if prune {
                        let l = labels.unwrap();
                        if l[i] != l[j] {
                            continue;
                        }
                    }
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        Ok(Self {
            eps,
            adjacency,
            pruned: prune,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Adjacency lists are sorted, so membership is a binary search.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Dataset, Metric};

    fn dm_of(points: Vec<Vec<f64>>) -> DistanceMatrix {
        let labels = vec!["a"; points.len()];
        Dataset::from_rows(points, labels).unwrap().distances(Metric::Euclidean)
    }

    #[test]
    fn collinear_three() {
        let dm = dm_of(vec![vec![0.0], vec![1.0], vec![2.0]]);
        let mst = build_mst(&dm, &[0, 1, 2]).unwrap();
        let pairs: Vec<_> = mst.edges.iter().map(|e| (e.a, e.b, e.weight)).collect();
        assert_eq!(pairs, vec![(0, 1, 1.0), (1, 2, 1.0)]);
        assert_eq!(mst.total_weight, 2.0);
        assert_eq!(mst.max_edge().unwrap(), 1.0);
    }

    #[test]
    fn single_vertex() {
        let dm = dm_of(vec![vec![0.0], vec![1.0]]);
        let mst = build_mst(&dm, &[1]).unwrap();
        assert!(mst.edges.is_empty());
        assert_eq!(mst.max_edge().unwrap_err(), Error::DegenerateTree);
        assert_eq!(build_mst(&dm, &[]).unwrap_err(), Error::EmptySubset);
    }

    #[test]
    fn unit_square() {
        let dm = dm_of(vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]);
        let mst = build_mst(&dm, &[0, 1, 2, 3]).unwrap();
        assert_eq!(mst.edges.len(), 3);
        assert_eq!(mst.total_weight, 3.0);
        assert!(mst.edges.iter().all(|e| e.weight == 1.0));
    }

    #[test]
    fn bridge_edge_is_bottleneck() {
        let dm = dm_of(vec![vec![0.0], vec![1.0], vec![2.0], vec![10.0]]);
        let mst = build_mst(&dm, &[0, 1, 2, 3]).unwrap();
        assert_eq!(mst.max_edge().unwrap(), 8.0);
        let e = mst.bottleneck().unwrap();
        assert_eq!((e.a, e.b), (2, 3));
    }

    #[test]
    fn eps_graph_threshold_and_pruning() {
        let dm = dm_of(vec![vec![0.0], vec![1.0], vec![2.0]]);
        let g = EpsGraph::build(&dm, 1.5, None, false).unwrap();
        assert_eq!(g.adjacency, vec![vec![1], vec![0, 2], vec![1]]);
        let g = EpsGraph::build(&dm, 1.5, Some(&[0, 1, 0]), true).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = EpsGraph::build(&dm, 0.5, None, false).unwrap();
        assert_eq!(g.edge_count(), 0);
        // strict inequality
        let g = EpsGraph::build(&dm, 1.0, None, false).unwrap();
        assert_eq!(g.edge_count(), 0);
    }
}
