use std::collections::HashMap;

use crate::graph::VertexId;

/// Assignment of every vertex in `0..n` to exactly one community label.
///
/// Labels are arbitrary non-negative integers; two partitions that group the
/// vertices identically but use different labels compare unequal until both
/// are passed through [`Partition::canonical`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn from_labels(labels: Vec<usize>) -> Self {
        Partition { labels }
    }

    /// Builds a partition from explicit communities. Every vertex in `0..n`
    /// must appear in exactly one community; returns `None` otherwise.
    pub fn from_communities(n: usize, communities: &[Vec<VertexId>]) -> Option<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, members) in communities.iter().enumerate() {
            for &v in members {
                if v >= n || labels[v] != usize::MAX {
                    return None;
                }
                labels[v] = c;
            }
        }
        if labels.contains(&usize::MAX) {
            return None;
        }
        Some(Partition { labels })
    }

    /// Every vertex in its own community.
    pub fn singletons(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: VertexId) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Relabels communities `0, 1, 2, ...` in order of their smallest member.
    pub fn canonical(&self) -> Partition {
        let mut map = HashMap::new();
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Partition { labels }
    }

    /// True when both partitions group the vertices identically.
    pub fn same_grouping(&self, other: &Partition) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn num_communities(&self) -> usize {
        let mut seen: Vec<usize> = self.labels.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Communities as sorted member lists, ordered by smallest member.
    pub fn communities(&self) -> Vec<Vec<VertexId>> {
        let canon = self.canonical();
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for (v, &c) in canon.labels.iter().enumerate() {
            if c == out.len() {
                out.push(Vec::new());
            }
            out[c].push(v);
        }
        out
    }

    pub fn community_sizes(&self) -> Vec<usize> {
        self.communities().iter().map(Vec::len).collect()
    }
}
