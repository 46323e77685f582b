use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::VertexId;
use crate::partition::Partition;
use crate::rng::rng_from_seed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("poller plan leaves {} vertices unpolled: {:?}", uncovered.len(), uncovered)]
pub struct CoverError {
    pub uncovered: Vec<VertexId>,
}

/// The vertex subsets handled by each poller. Subsets may overlap; together
/// they must cover every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PollerPlan {
    subsets: Vec<Vec<VertexId>>,
}

impl PollerPlan {
    pub fn new(subsets: Vec<Vec<VertexId>>) -> Self {
        PollerPlan { subsets }
    }

    /// A single poller that visits every vertex.
    pub fn single(n: usize) -> Self {
        PollerPlan::new(vec![(0..n).collect()])
    }

    /// `pollers` contiguous, disjoint id ranges of near-equal size.
    pub fn blocks(n: usize, pollers: usize) -> Self {
        let pollers = pollers.max(1);
        let subsets = (0..pollers)
            .map(|i| (i * n / pollers..(i + 1) * n / pollers).collect())
            .collect();
        PollerPlan::new(subsets)
    }

    /// Each vertex goes to one uniformly chosen poller and, with probability
    /// `overlap`, to a second one. Visiting order inside each subset is shuffled.
    pub fn random(n: usize, pollers: usize, overlap: f64, seed: u64) -> Self {
        let pollers = pollers.max(1);
        let mut rng = rng_from_seed(seed);
        let mut subsets = vec![Vec::new(); pollers];
        for v in 0..n {
            subsets[rng.gen_range(0..pollers)].push(v);
            if rng.gen_bool(overlap.clamp(0.0, 1.0)) {
                subsets[rng.gen_range(0..pollers)].push(v);
            }
        }
        for s in &mut subsets {
            s.shuffle(&mut rng);
        }
        PollerPlan::new(subsets)
    }

    pub fn subsets(&self) -> &[Vec<VertexId>] {
        &self.subsets
    }

    pub fn check_cover(&self, n: usize) -> Result<(), CoverError> {
        let mut covered = vec![false; n];
        for &v in self.subsets.iter().flatten() {
            if v < n {
                covered[v] = true;
            }
        }
        let uncovered: Vec<VertexId> = (0..n).filter(|&v| !covered[v]).collect();
        if uncovered.is_empty() {
            Ok(())
        } else {
            Err(CoverError { uncovered })
        }
    }
}

/// Lock-free disjoint sets shared by concurrent pollers.
///
/// Roots are always linked towards the smaller index, so `parent[x] <= x`
/// holds at all times and no interleaving can create a cycle.
#[derive(Debug)]
pub struct ConcurrentUnionFind {
    parent: Vec<AtomicUsize>,
}

impl ConcurrentUnionFind {
    pub fn new(n: usize) -> Self {
        ConcurrentUnionFind {
            parent: (0..n).map(AtomicUsize::new).collect(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        loop {
            let p = self.parent[x].load(Ordering::Acquire);
            if p == x {
                return x;
            }
            let grand = self.parent[p].load(Ordering::Acquire);
            if grand != p {
                // Path halving; losing the race is harmless.
                let _ = self.parent[x].compare_exchange_weak(
                    p,
                    grand,
                    Ordering::AcqRel,
                    Ordering::Acquire,
                );
            }
            x = grand;
        }
    }

    pub fn union(&self, x: usize, y: usize) -> bool {
        loop {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx == ry {
                return false;
            }
            let (high, low) = if rx > ry { (rx, ry) } else { (ry, rx) };
            if self.parent[high]
                .compare_exchange(high, low, Ordering::AcqRel, Ordering::Acquire)
                .is_ok()
            {
                return true;
            }
        }
    }

    /// Numbers the sets 0, 1, ... in order of their smallest member. Call
    /// once all unions have finished.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut next = 0;
        (0..n)
            .map(|v| {
                let r = self.find(v);
                if root_label[r] == usize::MAX {
                    root_label[r] = next;
                    next += 1;
                }
                root_label[r]
            })
            .collect()
    }
}

/// Every poller, concurrently, merges each vertex of its subset with that
/// vertex's preferred neighbour.
pub fn poll_and_merge(preferred: &[VertexId], plan: &PollerPlan) -> Result<Partition, CoverError> {
    plan.check_cover(preferred.len())?;
    let sets = ConcurrentUnionFind::new(preferred.len());
    plan.subsets().par_iter().for_each(|subset| {
        for &v in subset {
            sets.union(v, preferred[v]);
        }
    });
    Ok(Partition::from_labels(sets.labels()))
}
