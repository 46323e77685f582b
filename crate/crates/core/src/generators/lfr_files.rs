use std::io::{self, BufRead, Write};

use super::Benchmark;
use crate::io::{load_edge_list, partition_for, read_labels, IdRemap, LoadError, LoadOptions};

/// A benchmark read from files, with the map back to the file's vertex ids.
#[derive(Debug, Clone)]
pub struct LoadedBenchmark {
    pub bench: Benchmark,
    pub remap: IdRemap,
}

/// Reads the `network.dat` / `community.dat` pair written by the LFR tool.
///
/// Edges may be listed in both directions; each undirected edge is kept
/// once. Every vertex of the network must carry a community label.
pub fn load_lfr_files<R1: BufRead, R2: BufRead>(
    network: R1,
    communities: R2,
) -> Result<LoadedBenchmark, LoadError> {
    let loaded = load_edge_list(network, LoadOptions::default())?;
    let labels = read_labels(communities)?;
    let truth = partition_for(&loaded.remap, &labels)?;
    Ok(LoadedBenchmark {
        bench: Benchmark {
            graph: loaded.graph,
            truth,
        },
        remap: loaded.remap,
    })
}

/// Writes a benchmark the way the LFR tool does: 1-based ids, tab separated,
/// every edge in both directions.
pub fn write_lfr_files<W1: Write, W2: Write>(
    bench: &Benchmark,
    mut network: W1,
    mut communities: W2,
) -> io::Result<()> {
    for v in bench.graph.vertices() {
        for &u in bench.graph.neighbours(v) {
            writeln!(network, "{}\t{}", v + 1, u + 1)?;
        }
    }
    for (v, &c) in bench.truth.labels().iter().enumerate() {
        writeln!(communities, "{}\t{}", v + 1, c + 1)?;
    }
    Ok(())
}
