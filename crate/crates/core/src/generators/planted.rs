use rand::Rng;

use super::{config_err, Benchmark, GenError};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::rng_from_seed;

/// Equal-size groups with independent intra- and inter-group edges chosen so
/// that each vertex has expected degree `z`, of which `z_out` leaves its group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedConfig {
    pub n: usize,
    pub groups: usize,
    pub z: f64,
    pub z_out: f64,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            n: 128,
            groups: 4,
            z: 16.0,
            z_out: 1.0,
            seed: 0,
        }
    }
}

impl PlantedConfig {
    pub fn z_in(&self) -> f64 {
        self.z - self.z_out
    }

    pub fn group_size(&self) -> usize {
        self.n / self.groups.max(1)
    }

    /// Probability of each intra-group pair.
    pub fn p_in(&self) -> f64 {
        self.z_in() / (self.group_size() as f64 - 1.0)
    }

    /// Probability of each inter-group pair.
    pub fn p_out(&self) -> f64 {
        let others = (self.n - self.group_size()) as f64;
        if others == 0.0 {
            0.0
        } else {
            self.z_out / others
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.groups == 0 || !self.n.is_multiple_of(self.groups) {
            return Err(config_err(format!(
                "n = {} must be divisible by groups = {}",
                self.n, self.groups
            )));
        }
        if self.group_size() < 2 {
            return Err(config_err("groups need at least 2 vertices"));
        }
        if !(self.z_out >= 0.0 && self.z_out <= self.z) {
            return Err(config_err(format!(
                "z_out must satisfy 0 <= z_out <= z (z_out = {}, z = {})",
                self.z_out, self.z
            )));
        }
        if self.groups == 1 && self.z_out > 0.0 {
            return Err(config_err("z_out must be 0 with a single group"));
        }
        for (name, p) in [("p_in", self.p_in()), ("p_out", self.p_out())] {
            if !(0.0..=1.0).contains(&p) {
                return Err(config_err(format!("{name} = {p} lies outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Samples a planted-partition graph. Vertices left isolated are joined to a
/// random member of their own group.
pub fn gen_planted(config: &PlantedConfig) -> Result<Benchmark, GenError> {
    config.validate()?;
    let (n, size) = (config.n, config.group_size());
    let (p_in, p_out) = (config.p_in(), config.p_out());
    let mut rng = rng_from_seed(config.seed);
    let group = |v: usize| v / size;

    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    for u in 0..n {
        for v in u + 1..n {
            let p = if group(u) == group(v) { p_in } else { p_out };
            if rng.gen::<f64>() < p {
                edges.push((u, v));
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    for v in 0..n {
        if degree[v] == 0 {
            let base = group(v) * size;
            let mut u = base + rng.gen_range(0..size - 1);
            if u >= v {
                u += 1;
            }
            edges.push((v, u));
            degree[v] += 1;
            degree[u] += 1;
        }
    }

    let graph = Graph::from_edges(n, edges)?;
    let truth = Partition::from_labels((0..n).map(group).collect());
    Ok(Benchmark { graph, truth })
}
