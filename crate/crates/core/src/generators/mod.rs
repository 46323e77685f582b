//! Synthetic graphs with a planted ground truth, plus ingestion of files
//! written by the reference LFR benchmark tool.

mod lfr;
mod lfr_files;
mod planted;

use std::io::{self, Write};

use thiserror::Error;

pub use lfr::{gen_lfr_like, LfrLikeConfig};
pub use lfr_files::{load_lfr_files, write_lfr_files, LoadedBenchmark};
pub use planted::{gen_planted, PlantedConfig};

use crate::graph::{Graph, GraphError};
use crate::io::{write_edge_list, write_partition, IdRemap};
use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no feasible benchmark after {attempts} attempts: {reason}")]
    Infeasible { attempts: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A generated graph and the communities it was built around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Benchmark {
    pub graph: Graph,
    pub truth: Partition,
}

impl Benchmark {
    /// Fraction of edges whose endpoints lie in different ground-truth communities.
    pub fn inter_edge_fraction(&self) -> f64 {
        let m = self.graph.m();
        if m == 0 {
            return 0.0;
        }
        let inter = self
            .graph
            .edges()
            .filter(|&(u, v)| self.truth.label(u) != self.truth.label(v))
            .count();
        inter as f64 / m as f64
    }

    /// Writes the edge list and the ground truth with 0-based ids.
    pub fn write<W1: Write, W2: Write>(&self, edges: W1, truth: W2) -> io::Result<()> {
        let ids = IdRemap::identity(self.graph.n());
        write_edge_list(&self.graph, &ids, edges)?;
        write_partition(&self.truth, &ids, truth)
    }
}

fn config_err(msg: impl Into<String>) -> GenError {
    GenError::Config(msg.into())
}
