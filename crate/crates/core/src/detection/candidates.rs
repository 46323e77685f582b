use super::DetectionParams;
use crate::graph::{Graph, VertexId};

/// The `k` highest-degree neighbours a vertex keeps as its candidates.
///
/// Members are stored in ascending id order. Degree ties at the cut are
/// resolved towards the lower id, so the list depends only on the degrees
/// of the owner's neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateList {
    owner: VertexId,
    members: Vec<VertexId>,
}

impl CandidateList {
    /// Ranks `(neighbour, degree)` pairs and keeps the top `k`.
    pub fn from_neighbour_degrees(
        owner: VertexId,
        neighbours: &[(VertexId, usize)],
        k: usize,
    ) -> Self {
        let mut ranked = neighbours.to_vec();
        ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut members: Vec<VertexId> = ranked.into_iter().take(k).map(|(u, _)| u).collect();
        members.sort_unstable();
        CandidateList { owner, members }
    }

    /// Rebuilds a list from announced members.
    pub fn from_members(owner: VertexId, members: &[VertexId]) -> Self {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        CandidateList { owner, members }
    }

    pub fn owner(&self) -> VertexId {
        self.owner
    }

    /// Members in ascending id order.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Candidate list of `v` in `graph`.
pub fn compile_candidates(graph: &Graph, v: VertexId, params: &DetectionParams) -> CandidateList {
    let view: Vec<(VertexId, usize)> = graph
        .neighbours(v)
        .iter()
        .map(|&u| (u, graph.degree(u)))
        .collect();
    CandidateList::from_neighbour_degrees(v, &view, params.k_rule.k(graph.degree(v)))
}

/// Candidate lists of every vertex, indexed by vertex id.
pub fn compile_all(graph: &Graph, params: &DetectionParams) -> Vec<CandidateList> {
    graph
        .vertices()
        .map(|v| compile_candidates(graph, v, params))
        .collect()
}

/// Number of vertices two candidate lists have in common.
pub fn agreement(a: &CandidateList, b: &CandidateList) -> usize {
    let (x, y) = (a.members(), b.members());
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common
}
