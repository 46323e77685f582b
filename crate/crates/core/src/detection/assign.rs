use rand::Rng;
use rayon::prelude::*;

use super::candidates::{agreement, CandidateList};
use super::{DetectionParams, ThresholdNorm, TiePolicy};
use crate::graph::{Graph, VertexId};
use crate::rng::vertex_rng;

// Absorbs representation error in `tau * bound` (e.g. 0.1 * 30 > 3.0 in f64).
const THRESHOLD_SLACK: f64 = 1e-9;

/// Which branch chose a vertex's preferred neighbour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Maximal agreement among neighbours passing the threshold.
    Agreement,
    /// No neighbour passed the threshold; a maximal-degree neighbour was taken.
    DegreeFallback,
}

/// What a vertex knows about one neighbour after both announcement rounds.
#[derive(Debug, Clone, Copy)]
pub struct NeighbourInfo<'a> {
    pub id: VertexId,
    pub degree: usize,
    pub candidates: &'a CandidateList,
}

/// Chooses the preferred neighbour of `v` from purely local information:
/// its own degree and candidates, and the degree and candidates of each
/// neighbour. `neighbours` must be non-empty and listed in ascending id order.
pub fn choose_preferred(
    v: VertexId,
    degree: usize,
    own: &CandidateList,
    neighbours: &[NeighbourInfo<'_>],
    params: &DetectionParams,
) -> (VertexId, Provenance) {
    assert!(!neighbours.is_empty(), "vertex {v} has no neighbours");

    let mut best = 0;
    let mut tied: Vec<&NeighbourInfo<'_>> = Vec::new();
    for nb in neighbours {
        let agree = agreement(own, nb.candidates);
        let bound = match params.threshold {
            ThresholdNorm::Degree => degree.min(nb.degree),
            ThresholdNorm::ListSize => own.len().min(nb.candidates.len()),
        };
        if (agree as f64) < params.tau * bound as f64 - THRESHOLD_SLACK {
            continue;
        }
        if tied.is_empty() || agree > best {
            best = agree;
            tied.clear();
            tied.push(nb);
        } else if agree == best {
            tied.push(nb);
        }
    }

    let provenance = if tied.is_empty() {
        tied.extend(neighbours.iter());
        Provenance::DegreeFallback
    } else {
        Provenance::Agreement
    };
    if provenance == Provenance::DegreeFallback || params.prefer_higher_degree {
        let top = tied.iter().map(|nb| nb.degree).max().unwrap_or(0);
        tied.retain(|nb| nb.degree == top);
    }

    let chosen = match (tied.len(), params.ties) {
        (1, _) | (_, TiePolicy::LowestId) => tied[0].id,
        (len, TiePolicy::SeededRandom) => tied[vertex_rng(params.seed, v).gen_range(0..len)].id,
    };
    (chosen, provenance)
}

/// Preferred neighbour of `v`, reading neighbour state from `graph` and `lists`.
pub fn select_preferred(
    graph: &Graph,
    v: VertexId,
    lists: &[CandidateList],
    params: &DetectionParams,
) -> (VertexId, Provenance) {
    let view: Vec<NeighbourInfo<'_>> = graph
        .neighbours(v)
        .iter()
        .map(|&u| NeighbourInfo {
            id: u,
            degree: graph.degree(u),
            candidates: &lists[u],
        })
        .collect();
    choose_preferred(v, graph.degree(v), &lists[v], &view, params)
}

/// Preferred neighbour `a_v` of every vertex, with the branch that chose it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    preferred: Vec<VertexId>,
    provenance: Vec<Provenance>,
}

impl Assignment {
    pub fn new(preferred: Vec<VertexId>, provenance: Vec<Provenance>) -> Self {
        assert_eq!(preferred.len(), provenance.len());
        Assignment {
            preferred,
            provenance,
        }
    }

    pub fn len(&self) -> usize {
        self.preferred.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preferred.is_empty()
    }

    pub fn preferred(&self, v: VertexId) -> VertexId {
        self.preferred[v]
    }

    pub fn provenance(&self, v: VertexId) -> Provenance {
        self.provenance[v]
    }

    /// The map `v -> a_v` as a slice indexed by vertex.
    pub fn as_slice(&self) -> &[VertexId] {
        &self.preferred
    }

    pub fn fallback_count(&self) -> usize {
        self.provenance
            .iter()
            .filter(|&&p| p == Provenance::DegreeFallback)
            .count()
    }
}

impl FromIterator<(VertexId, Provenance)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (VertexId, Provenance)>>(iter: I) -> Self {
        let (preferred, provenance) = iter.into_iter().unzip();
        Assignment {
            preferred,
            provenance,
        }
    }
}

/// Runs [`select_preferred`] for every vertex, in parallel when `workers > 1`.
pub fn assign_all(
    graph: &Graph,
    lists: &[CandidateList],
    params: &DetectionParams,
    workers: usize,
) -> Assignment {
    if workers <= 1 {
        return graph
            .vertices()
            .map(|v| select_preferred(graph, v, lists, params))
            .collect();
    }
    super::with_pool(workers, || {
        let pairs: Vec<(VertexId, Provenance)> = (0..graph.n())
            .into_par_iter()
            .map(|v| select_preferred(graph, v, lists, params))
            .collect();
        pairs.into_iter().collect()
    })
}

#[cfg(test)]
mod tests {
    use super::super::candidates::compile_all;
    use super::*;

    fn run(graph: &Graph, v: VertexId, params: &DetectionParams) -> (VertexId, Provenance) {
        let lists = compile_all(graph, params);
        select_preferred(graph, v, &lists, params)
    }

    #[test]
    fn star_leaf_falls_back_to_center() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        for leaf in 1..5 {
            assert_eq!(
                run(&g, leaf, &DetectionParams::default()),
                (0, Provenance::DegreeFallback)
            );
        }
    }

    #[test]
    fn triangle_vertex_two_agrees_with_one() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        for ties in [TiePolicy::LowestId, TiePolicy::SeededRandom] {
            let params = DetectionParams {
                ties,
                ..Default::default()
            };
            assert_eq!(run(&g, 2, &params), (1, Provenance::Agreement));
        }
    }

    #[test]
    fn zero_tau_never_falls_back() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let params = DetectionParams {
            tau: 0.0,
            ..Default::default()
        };
        let lists = compile_all(&g, &params);
        for v in g.vertices() {
            assert_eq!(
                select_preferred(&g, v, &lists, &params).1,
                Provenance::Agreement
            );
        }
    }

    #[test]
    fn threshold_is_inclusive_despite_float_error() {
        // agreement 3 against 0.1 * 30 must pass
        let own = CandidateList::from_neighbour_degrees(0, &[(1, 9), (2, 9), (3, 9)], 3);
        let other = CandidateList::from_neighbour_degrees(4, &[(1, 9), (2, 9), (3, 9)], 3);
        let params = DetectionParams {
            tau: 0.1,
            ..Default::default()
        };
        let nb = [NeighbourInfo {
            id: 4,
            degree: 30,
            candidates: &other,
        }];
        assert_eq!(
            choose_preferred(0, 30, &own, &nb, &params),
            (4, Provenance::Agreement)
        );
    }

    #[test]
    fn degree_preference_among_agreement_ties() {
        let own = CandidateList::from_neighbour_degrees(0, &[(9, 1)], 1);
        let a = CandidateList::from_neighbour_degrees(1, &[(9, 1)], 1);
        let b = CandidateList::from_neighbour_degrees(2, &[(9, 1)], 1);
        let nb = [
            NeighbourInfo {
                id: 1,
                degree: 2,
                candidates: &a,
            },
            NeighbourInfo {
                id: 2,
                degree: 5,
                candidates: &b,
            },
        ];
        let params = DetectionParams {
            ties: TiePolicy::LowestId,
            ..Default::default()
        };
        assert_eq!(choose_preferred(0, 2, &own, &nb, &params).0, 2);
        let plain = DetectionParams {
            prefer_higher_degree: false,
            ..params
        };
        assert_eq!(choose_preferred(0, 2, &own, &nb, &plain).0, 1);
    }
}
