//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use agree::{Graph, Partition};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjusted Rand index by enumerating every element pair.
pub fn ari_by_pairs(p: &[usize], q: &[usize]) -> f64 {
    let (mut both, mut only_p, mut only_q, mut neither) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            match (p[i] == p[j], q[i] == q[j]) {
                (true, true) => both += 1.0,
                (true, false) => only_p += 1.0,
                (false, true) => only_q += 1.0,
                (false, false) => neither += 1.0,
            }
        }
    }
    let den = (both + only_p) * (only_p + neither) + (both + only_q) * (only_q + neither);
    if den == 0.0 {
        return 1.0;
    }
    2.0 * (both * neither - only_p * only_q) / den
}

fn distribution<K: Ord + Copy>(keys: impl Iterator<Item = K>) -> BTreeMap<K, f64> {
    let mut counts = BTreeMap::new();
    let mut total = 0usize;
    for k in keys {
        *counts.entry(k).or_insert(0usize) += 1;
        total += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / total as f64))
        .collect()
}

fn shannon<K>(d: &BTreeMap<K, f64>) -> f64 {
    d.values().map(|&x| -x * x.ln()).sum()
}

/// NMI (arithmetic-mean normalization) from explicit probability tables.
pub fn nmi_by_probabilities(p: &[usize], q: &[usize]) -> f64 {
    let (pp, pq) = (
        distribution(p.iter().copied()),
        distribution(q.iter().copied()),
    );
    let joint = distribution(p.iter().copied().zip(q.iter().copied()));
    let (hp, hq) = (shannon(&pp), shannon(&pq));
    if hp == 0.0 && hq == 0.0 {
        return 1.0;
    }
    if hp == 0.0 || hq == 0.0 {
        return 0.0;
    }
    let mi: f64 = joint
        .iter()
        .map(|(&(a, b), &x)| x * (x / (pp[&a] * pq[&b])).ln())
        .sum();
    2.0 * mi / (hp + hq)
}

pub fn random_labels(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}

/// Weakly connected components of `v -> map[v]` by breadth-first search,
/// labelled by smallest member.
pub fn components_by_bfs(map: &[usize]) -> Partition {
    let n = map.len();
    let mut adj = vec![Vec::new(); n];
    for (v, &a) in map.iter().enumerate() {
        adj[v].push(a);
        adj[a].push(v);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if label[u] == usize::MAX {
                    label[u] = next;
                    queue.push_back(u);
                }
            }
        }
        next += 1;
    }
    Partition::from_labels(label)
}

/// Erdős–Rényi graph on `n` vertices with mean degree near `mean_degree`;
/// isolated vertices are joined to a random other vertex.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, mean_degree: f64) -> Graph {
    let p = (mean_degree / (n as f64 - 1.0)).min(1.0);
    let mut edges = Vec::new();
    let mut deg = vec![0; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    for v in 0..n {
        if deg[v] == 0 {
            let mut u = rng.gen_range(0..n - 1);
            if u >= v {
                u += 1;
            }
            edges.push((v, u));
            deg[v] += 1;
            deg[u] += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}
