use super::union_find::UnionFind;
use crate::graph::VertexId;
use crate::partition::Partition;

/// Merges the community of every vertex `v` with that of `preferred[v]`,
/// starting from singletons. The result is the set of weakly connected
/// components of the functional digraph `v -> preferred[v]`, labelled by
/// smallest member.
pub fn uncover(preferred: &[VertexId]) -> Partition {
    let order: Vec<VertexId> = (0..preferred.len()).collect();
    uncover_in_order(preferred, &order)
}

/// [`uncover`] with an explicit processing order. Vertices missing from
/// `order` are not merged; repeated entries are harmless.
pub fn uncover_in_order(preferred: &[VertexId], order: &[VertexId]) -> Partition {
    let mut uf = UnionFind::new(preferred.len());
    for &v in order {
        uf.union(v, preferred[v]);
    }
    Partition::from_labels(uf.labels())
}
