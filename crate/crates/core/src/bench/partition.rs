use std::collections::HashMap;

/// Per-point cluster assignment; `None` marks noise. Cluster ids are
/// contiguous from 0 in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    ids: Vec<Option<usize>>,
    clusters: usize,
}

impl Partition {
    /// Canonicalizes arbitrary ids to first-appearance order.
    pub fn new(raw: &[Option<usize>]) -> Self {
        let mut map = HashMap::new();
        let ids = raw
            .iter()
            .map(|id| {
                id.map(|c| {
                    let next = map.len();
                    *map.entry(c).or_insert(next)
                })
            })
            .collect();
        Self {
            ids,
            clusters: map.len(),
        }
    }

    /// Every point assigned, from plain labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let raw: Vec<Option<usize>> = labels.iter().map(|&l| Some(l)).collect();
        Self::new(&raw)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.ids[i]
    }

    pub fn ids(&self) -> &[Option<usize>] {
        &self.ids
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters
    }

    pub fn noise_count(&self) -> usize {
        self.ids.iter().filter(|id| id.is_none()).count()
    }
}
