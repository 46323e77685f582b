use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{config_err, Benchmark, GenError};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::{derive_seed, rng_from_seed};

const ATTEMPTS: usize = 20;
const MATCHING_PASSES: usize = 20;

/// Power-law degrees and community sizes with a mixing fraction `mu` of
/// each vertex's edges leaving its community.
///
/// This follows the construction of the LFR benchmark (stub matching inside
/// and across communities) but skips its rewiring stage, so the realised
/// mixing fraction is only approximately `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LfrLikeConfig {
    pub n: usize,
    pub mu: f64,
    pub degree_exponent: f64,
    pub community_exponent: f64,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub min_community: usize,
    pub max_community: usize,
    pub seed: u64,
}

impl Default for LfrLikeConfig {
    fn default() -> Self {
        LfrLikeConfig {
            n: 1000,
            mu: 0.1,
            degree_exponent: 2.0,
            community_exponent: 1.0,
            avg_degree: 20.0,
            max_degree: 50,
            min_community: 10,
            max_community: 50,
            seed: 0,
        }
    }
}

impl LfrLikeConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(config_err(format!("mu = {} lies outside [0, 1]", self.mu)));
        }
        if !(self.avg_degree >= 1.0 && self.avg_degree <= self.max_degree as f64) {
            return Err(config_err(format!(
                "need 1 <= avg_degree <= max_degree (avg_degree = {}, max_degree = {})",
                self.avg_degree, self.max_degree
            )));
        }
        if self.max_degree >= self.n {
            return Err(config_err(format!(
                "max_degree = {} must be below n = {}",
                self.max_degree, self.n
            )));
        }
        if self.min_community < 2
            || self.min_community > self.max_community
            || self.max_community > self.n
        {
            return Err(config_err(format!(
                "community sizes need 2 <= min <= max <= n (min = {}, max = {}, n = {})",
                self.min_community, self.max_community, self.n
            )));
        }
        if !(self.degree_exponent.is_finite() && self.community_exponent.is_finite()) {
            return Err(config_err("exponents must be finite"));
        }
        Ok(())
    }
}

/// Integral of `x^p` over `[a, b]`.
fn power_integral(p: f64, a: f64, b: f64) -> f64 {
    if (p + 1.0).abs() < 1e-12 {
        (b / a).ln()
    } else {
        (b.powf(p + 1.0) - a.powf(p + 1.0)) / (p + 1.0)
    }
}

/// Mean of the continuous density proportional to `x^-exponent` on `[a, b]`.
fn power_law_mean(exponent: f64, a: f64, b: f64) -> f64 {
    if b - a < 1e-12 {
        return a;
    }
    power_integral(1.0 - exponent, a, b) / power_integral(-exponent, a, b)
}

/// Inverse-CDF draw from the density proportional to `x^-exponent` on `[a, b]`.
fn sample_power_law(rng: &mut ChaCha8Rng, exponent: f64, a: f64, b: f64) -> f64 {
    let u: f64 = rng.gen();
    if (exponent - 1.0).abs() < 1e-12 {
        a * (b / a).powf(u)
    } else {
        let e = 1.0 - exponent;
        (a.powf(e) + u * (b.powf(e) - a.powf(e))).powf(1.0 / e)
    }
}

/// Rounds `x` up with probability equal to its fractional part.
fn randomized_round(rng: &mut ChaCha8Rng, x: f64) -> usize {
    let floor = x.floor();
    let up = rng.gen::<f64>() < x - floor;
    floor as usize + usize::from(up)
}

/// Lower degree bound giving the requested mean for the given upper bound.
fn solve_min_degree(config: &LfrLikeConfig) -> Result<f64, GenError> {
    let (gamma, kmax, target) = (
        config.degree_exponent,
        config.max_degree as f64,
        config.avg_degree,
    );
    if power_law_mean(gamma, 1.0, kmax) > target {
        return Err(config_err(format!(
            "avg_degree = {target} is below the smallest mean reachable with max_degree = {}",
            config.max_degree
        )));
    }
    let (mut lo, mut hi) = (1.0, kmax);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if power_law_mean(gamma, mid, kmax) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn sample_community_sizes(rng: &mut ChaCha8Rng, config: &LfrLikeConfig) -> Option<Vec<usize>> {
    let (smin, smax) = (config.min_community, config.max_community);
    let mut sizes = Vec::new();
    let mut total = 0;
    while total < config.n {
        let s = sample_power_law(
            rng,
            config.community_exponent,
            smin as f64,
            smax as f64 + 1.0,
        )
        .floor() as usize;
        let s = s.clamp(smin, smax);
        sizes.push(s);
        total += s;
    }
    let excess = total - config.n;
    let last = sizes.last_mut()?;
    if *last - smin >= excess {
        *last -= excess;
        return Some(sizes);
    }
    // Drop the last community and spread its remainder over the others.
    let mut remainder = *last - excess;
    sizes.pop();
    let mut growable: Vec<usize> = (0..sizes.len()).filter(|&c| sizes[c] < smax).collect();
    while remainder > 0 {
        if growable.is_empty() {
            return None;
        }
        let pick = rng.gen_range(0..growable.len());
        let c = growable[pick];
        sizes[c] += 1;
        remainder -= 1;
        if sizes[c] == smax {
            growable.swap_remove(pick);
        }
    }
    Some(sizes)
}

/// Places vertices in communities so that every internal degree is smaller
/// than the size of its community.
fn assign_communities(
    rng: &mut ChaCha8Rng,
    internal: &[usize],
    sizes: &[usize],
) -> Option<Vec<usize>> {
    let mut by_need: Vec<usize> = (0..internal.len()).collect();
    by_need.shuffle(rng);
    by_need.sort_by(|&a, &b| internal[b].cmp(&internal[a]));
    let mut by_size: Vec<usize> = (0..sizes.len()).collect();
    by_size.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));

    let mut room = sizes.to_vec();
    let mut open: Vec<usize> = Vec::new();
    let mut next = 0;
    let mut membership = vec![usize::MAX; internal.len()];
    for v in by_need {
        while next < by_size.len() && sizes[by_size[next]] > internal[v] {
            open.push(by_size[next]);
            next += 1;
        }
        if open.is_empty() {
            return None;
        }
        let pick = rng.gen_range(0..open.len());
        let c = open[pick];
        membership[v] = c;
        room[c] -= 1;
        if room[c] == 0 {
            open.swap_remove(pick);
        }
    }
    Some(membership)
}

/// Pairs stubs at random, skipping pairs that `accept` rejects or that
/// already exist. Unpaired stubs after the last pass are discarded.
fn match_stubs(
    rng: &mut ChaCha8Rng,
    mut stubs: Vec<usize>,
    edges: &mut HashSet<(usize, usize)>,
    accept: impl Fn(usize, usize) -> bool,
) {
    for _ in 0..MATCHING_PASSES {
        if stubs.len() < 2 {
            return;
        }
        stubs.shuffle(rng);
        let mut rejected = Vec::new();
        for pair in stubs.chunks(2) {
            let [u, v] = *pair else {
                rejected.extend_from_slice(pair);
                continue;
            };
            let key = (u.min(v), u.max(v));
            if u != v && accept(u, v) && edges.insert(key) {
                continue;
            }
            rejected.push(u);
            rejected.push(v);
        }
        if rejected.len() == stubs.len() {
            return;
        }
        stubs = rejected;
    }
}

fn try_generate(rng: &mut ChaCha8Rng, config: &LfrLikeConfig, kmin: f64) -> Option<Benchmark> {
    let n = config.n;
    let kmax = config.max_degree as f64;
    let mut degrees: Vec<usize> = (0..n)
        .map(|_| {
            let x = sample_power_law(rng, config.degree_exponent, kmin, kmax);
            randomized_round(rng, x).clamp(1, config.max_degree)
        })
        .collect();
    let mut internal: Vec<usize> = degrees
        .iter()
        .map(|&d| randomized_round(rng, (1.0 - config.mu) * d as f64).min(d))
        .collect();

    let sizes = sample_community_sizes(rng, config)?;
    let membership = assign_communities(rng, &internal, &sizes)?;

    let mut members = vec![Vec::new(); sizes.len()];
    for (v, &c) in membership.iter().enumerate() {
        members[c].push(v);
    }
    let mut edges = HashSet::new();
    for group in &members {
        let stub_total: usize = group.iter().map(|&v| internal[v]).sum();
        if stub_total % 2 == 1 {
            // Even out the parity by turning an external stub internal, or
            // failing that by dropping one internal stub.
            let size = group.len();
            if let Some(&v) = group
                .iter()
                .find(|&&v| internal[v] < degrees[v] && internal[v] + 1 < size)
            {
                internal[v] += 1;
            } else {
                let &v = group.iter().max_by_key(|&&v| internal[v])?;
                internal[v] -= 1;
                degrees[v] -= 1;
            }
        }
        let stubs: Vec<usize> = group
            .iter()
            .flat_map(|&v| std::iter::repeat_n(v, internal[v]))
            .collect();
        match_stubs(rng, stubs, &mut edges, |_, _| true);
    }
    let external: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degrees[v] - internal[v]))
        .collect();
    match_stubs(rng, external, &mut edges, |u, v| {
        membership[u] != membership[v]
    });

    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.sort_unstable();
    let mut degree = vec![0usize; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    for v in 0..n {
        if degree[v] == 0 {
            let group = &members[membership[v]];
            let u = *group
                .iter()
                .filter(|&&u| u != v)
                .collect::<Vec<_>>()
                .choose(rng)?;
            edges.push((v, *u));
            degree[v] += 1;
            degree[*u] += 1;
        }
    }

    let graph = Graph::from_edges(n, edges).ok()?;
    let truth = Partition::from_labels(membership);
    Some(Benchmark { graph, truth })
}

/// Samples an LFR-style benchmark graph.
pub fn gen_lfr_like(config: &LfrLikeConfig) -> Result<Benchmark, GenError> {
    config.validate()?;
    let kmin = solve_min_degree(config)?;
    for attempt in 0..ATTEMPTS {
        let mut rng = rng_from_seed(derive_seed(config.seed, &[attempt as u64]));
        if let Some(bench) = try_generate(&mut rng, config, kmin) {
            return Ok(bench);
        }
    }
    Err(GenError::Infeasible {
        attempts: ATTEMPTS,
        reason: format!(
            "communities of at most {} vertices cannot host internal degrees up to {:.0}",
            config.max_community,
            (1.0 - config.mu) * config.max_degree as f64
        ),
    })
}
