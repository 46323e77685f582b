//! Community detection by neighbour-list agreement.
//!
//! Three steps, each local to a vertex or to a pair of neighbours:
//!
//! 1. every vertex keeps its `k_v` highest-degree neighbours as candidates;
//! 2. every vertex picks the neighbour whose candidate list overlaps its own
//!    the most (its preferred neighbour `a_v`), provided the overlap reaches
//!    `tau * min(d_u, d_v)`; otherwise it picks a maximal-degree neighbour;
//! 3. the community of each vertex is merged with that of `a_v`.
//!
//! Steps 1 and 3 are deterministic and order independent. Step 2 draws
//! tie-breaks from a per-vertex random stream, so a run is fully determined
//! by its seed regardless of scheduling.

mod assign;
mod candidates;
mod uncover;
pub mod union_find;

use thiserror::Error;

pub use assign::{
    assign_all, choose_preferred, select_preferred, Assignment, NeighbourInfo, Provenance,
};
pub use candidates::{agreement, compile_all, compile_candidates, CandidateList};
pub use uncover::{uncover, uncover_in_order};
pub use union_find::UnionFind;

use crate::graph::Graph;
use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("tau must lie in [0, 1], got {0}")]
    Tau(f64),
    #[error("fixed candidate count must be at least 1")]
    ZeroK,
}

/// Size of a vertex's candidate list as a function of its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    /// `max(1, ceil(d / 2))`.
    HalfCeil,
    /// `max(1, floor(d / 2))`.
    HalfFloor,
    /// `min(k, d)`.
    Fixed(usize),
    /// Every neighbour.
    All,
}

impl KRule {
    /// Candidate count for a vertex of degree `d >= 1`; always in `1..=d`.
    pub fn k(self, degree: usize) -> usize {
        let k = match self {
            KRule::HalfCeil => degree.div_ceil(2),
            KRule::HalfFloor => degree / 2,
            KRule::Fixed(k) => k,
            KRule::All => degree,
        };
        k.clamp(1, degree.max(1))
    }
}

/// Quantity that `tau` multiplies in the agreement threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdNorm {
    /// `tau * min(d_u, d_v)`.
    Degree,
    /// `tau * min(|S_u|, |S_v|)`, the largest agreement the pair can reach.
    ListSize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiePolicy {
    /// Uniform choice from a stream keyed by `(seed, vertex)`.
    SeededRandom,
    /// Smallest vertex id.
    LowestId,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionParams {
    pub tau: f64,
    pub k_rule: KRule,
    pub threshold: ThresholdNorm,
    /// Among neighbours tied on maximal agreement, keep only those of
    /// maximal degree before applying `ties`.
    pub prefer_higher_degree: bool,
    pub ties: TiePolicy,
    pub seed: u64,
}

impl Default for DetectionParams {
    fn default() -> Self {
        DetectionParams {
            tau: 0.2,
            k_rule: KRule::HalfCeil,
            threshold: ThresholdNorm::Degree,
            prefer_higher_degree: true,
            ties: TiePolicy::SeededRandom,
            seed: 0,
        }
    }
}

impl DetectionParams {
    pub fn with_seed(self, seed: u64) -> Self {
        DetectionParams { seed, ..self }
    }

    pub fn with_tau(self, tau: f64) -> Self {
        DetectionParams { tau, ..self }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(ParamError::Tau(self.tau));
        }
        if self.k_rule == KRule::Fixed(0) {
            return Err(ParamError::ZeroK);
        }
        Ok(())
    }
}

/// Output of a detection run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub partition: Partition,
    pub assignment: Assignment,
}

/// Runs all three steps on a single thread.
pub fn detect(graph: &Graph, params: &DetectionParams) -> Result<Detection, ParamError> {
    detect_with_workers(graph, params, 1)
}

/// Runs all three steps, spreading the per-vertex work over `workers` threads.
/// The result does not depend on `workers`.
pub fn detect_with_workers(
    graph: &Graph,
    params: &DetectionParams,
    workers: usize,
) -> Result<Detection, ParamError> {
    params.validate()?;
    let lists = if workers <= 1 {
        compile_all(graph, params)
    } else {
        use rayon::prelude::*;
        with_pool(workers, || {
            (0..graph.n())
                .into_par_iter()
                .map(|v| compile_candidates(graph, v, params))
                .collect()
        })
    };
    let assignment = assign_all(graph, &lists, params, workers);
    let partition = uncover(assignment.as_slice());
    Ok(Detection {
        partition,
        assignment,
    })
}

pub(crate) fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(job)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_rule_bounds() {
        for d in 1..40 {
            for rule in [
                KRule::HalfCeil,
                KRule::HalfFloor,
                KRule::Fixed(3),
                KRule::All,
            ] {
                let k = rule.k(d);
                assert!((1..=d).contains(&k), "{rule:?} d={d} k={k}");
            }
        }
        assert_eq!(KRule::HalfCeil.k(1), 1);
        assert_eq!(KRule::HalfCeil.k(5), 3);
        assert_eq!(KRule::HalfFloor.k(5), 2);
        assert_eq!(KRule::HalfFloor.k(1), 1);
    }

    #[test]
    fn params_validation() {
        assert!(DetectionParams::default().validate().is_ok());
        assert_eq!(
            DetectionParams::default().with_tau(1.5).validate(),
            Err(ParamError::Tau(1.5))
        );
        assert!(DetectionParams::default()
            .with_tau(f64::NAN)
            .validate()
            .is_err());
    }

    #[test]
    fn triangle_is_one_community() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = detect(&g, &DetectionParams::default()).unwrap();
        assert_eq!(d.partition.communities(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn bridged_cliques_split_at_the_bridge() {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((3, 4));
        let g = Graph::from_edges(8, edges).unwrap();
        for ties in [TiePolicy::LowestId, TiePolicy::SeededRandom] {
            for seed in 0..20 {
                let params = DetectionParams {
                    ties,
                    seed,
                    ..Default::default()
                };
                let d = detect(&g, &params).unwrap();
                assert_eq!(
                    d.partition.communities(),
                    vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]
                );
            }
        }
    }
}
