//! Immutable undirected simple graphs.
//!
//! A [`Graph`] is stored in compressed sparse row form: one offset array and
//! one flat neighbour array, each neighbour run sorted by ascending id. Every
//! constructor enforces the model the detection procedure assumes: no
//! self-loops, no parallel edges, symmetric adjacency and no isolated vertex.

use std::fmt;

use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Errors raised while building a [`Graph`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    OutOfRange { u: VertexId, v: VertexId, n: usize },
}

/// Undirected, unweighted simple graph without isolated vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge iterator.
    ///
    /// Edges may be listed in either direction and more than once; parallel
    /// copies collapse into one. Self-loops, out-of-range endpoints and
    /// vertices left without any neighbour are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut pairs = Vec::new();
        let mut self_loops = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                self_loops += 1;
                continue;
            }
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets: Vec<VertexId> = pairs.into_iter().map(|(_, v)| v).collect();
        let graph = Graph { offsets, targets };

        let isolated = (0..n).filter(|&v| graph.degree(v) == 0).count();
        if self_loops > 0 || isolated > 0 {
            return Err(GraphError::Invalid(ValidationReport {
                self_loops,
                isolated,
                ..ValidationReport::default()
            }));
        }
        Ok(graph)
    }

    /// Builds a graph from per-vertex neighbour lists, which must already
    /// satisfy every graph invariant (see [`validate`]).
    pub fn from_adjacency(adjacency: &[Vec<VertexId>]) -> Result<Self, GraphError> {
        let report = validate(adjacency);
        if !report.is_empty() {
            return Err(GraphError::Invalid(report));
        }
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in adjacency {
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Ok(Graph { offsets, targets })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbours of `v` in ascending id order.
    pub fn neighbours(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbours(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbours(u).binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Copies the adjacency out as one vector per vertex.
    pub fn to_adjacency(&self) -> Vec<Vec<VertexId>> {
        self.vertices()
            .map(|v| self.neighbours(v).to_vec())
            .collect()
    }

    /// Returns the isomorphic graph in which vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Self, GraphError> {
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Re-checks every invariant; always empty for a constructed graph.
    pub fn validate(&self) -> ValidationReport {
        validate(&self.to_adjacency())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

/// Counts of invariant violations found in an adjacency structure.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub self_loops: usize,
    pub duplicates: usize,
    /// Directed entries `u -> v` without the matching `v -> u`.
    pub asymmetric: usize,
    pub isolated: usize,
    pub unsorted: usize,
    pub out_of_range: usize,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        *self == ValidationReport::default()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "no violations");
        }
        let parts = [
            ("self-loops", self.self_loops),
            ("duplicate edges", self.duplicates),
            ("asymmetric entries", self.asymmetric),
            ("isolated vertices", self.isolated),
            ("unsorted neighbour lists", self.unsorted),
            ("out-of-range ids", self.out_of_range),
        ];
        let mut first = true;
        for (name, count) in parts.iter().filter(|(_, c)| *c > 0) {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{count} {name}")?;
            first = false;
        }
        Ok(())
    }
}

/// Checks a candidate adjacency structure against the graph invariants.
pub fn validate(adjacency: &[Vec<VertexId>]) -> ValidationReport {
    let n = adjacency.len();
    let mut report = ValidationReport::default();
    for (v, list) in adjacency.iter().enumerate() {
        if list.is_empty() {
            report.isolated += 1;
        }
        if list.windows(2).any(|w| w[0] > w[1]) {
            report.unsorted += 1;
        }
        let mut sorted = list.clone();
        sorted.sort_unstable();
        report.duplicates += sorted.windows(2).filter(|w| w[0] == w[1]).count();
        for &u in list {
            if u >= n {
                report.out_of_range += 1;
            } else if u == v {
                report.self_loops += 1;
            } else if !adjacency[u].contains(&v) {
                report.asymmetric += 1;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_counts() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.neighbours(1), &[0, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parallel_edges_collapse() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn isolated_vertex_rejected() {
        let err = Graph::from_edges(3, [(0, 1)]).unwrap_err();
        match err {
            GraphError::Invalid(r) => assert_eq!(r.isolated, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn self_loop_rejected() {
        assert!(Graph::from_edges(2, [(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn validate_triangle_is_clean() {
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert!(validate(&adj).is_empty());
    }

    #[test]
    fn validate_reports_asymmetry() {
        let adj = vec![vec![1, 2], vec![0], vec![0, 1]];
        let r = validate(&adj);
        assert_eq!(r.asymmetric, 1);
        assert_eq!(
            r,
            ValidationReport {
                asymmetric: 1,
                ..Default::default()
            }
        );
    }

    #[test]
    fn validate_reports_isolated() {
        let adj = vec![vec![1], vec![0], vec![]];
        assert_eq!(
            validate(&adj),
            ValidationReport {
                isolated: 1,
                ..Default::default()
            }
        );
    }

    #[test]
    fn from_adjacency_round_trips() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = Graph::from_adjacency(&g.to_adjacency()).unwrap();
        assert_eq!(g, h);
    }
}
