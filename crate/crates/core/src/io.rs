//! Text formats: whitespace-separated edge lists and `vertex label` partition
//! files.
//!
//! External vertex ids are arbitrary unsigned integers. Loaders remap them to
//! dense internal ids in order of first appearance and hand back the
//! [`IdRemap`] so results can be written out under the original ids.

use std::collections::{BTreeMap, HashMap};
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, GraphError, ValidationReport, VertexId};
use crate::partition::Partition;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is listed twice in the partition file")]
    DuplicateVertex(u64),
    #[error("{} vertices have no community label: {}", .0.len(), preview(.0))]
    MissingLabels(Vec<u64>),
}

/// Two labelings that do not cover the same vertices.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("vertex sets differ: {} only in first ({}), {} only in second ({})",
    only_first.len(), preview(only_first), only_second.len(), preview(only_second))]
pub struct CarrierMismatch {
    pub only_first: Vec<u64>,
    pub only_second: Vec<u64>,
}

pub(crate) fn preview(ids: &[u64]) -> String {
    const SHOWN: usize = 20;
    let mut s = ids
        .iter()
        .take(SHOWN)
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    if ids.len() > SHOWN {
        s.push_str(" ...");
    }
    s
}

/// Bijection between external ids and dense internal ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdRemap {
    to_internal: HashMap<u64, VertexId>,
    to_external: Vec<u64>,
}

impl IdRemap {
    /// Builds the remap that sends `ids[i]` to `i`. Returns `None` on a repeated id.
    pub fn from_external(ids: Vec<u64>) -> Option<Self> {
        let mut to_internal = HashMap::with_capacity(ids.len());
        for (i, &id) in ids.iter().enumerate() {
            if to_internal.insert(id, i).is_some() {
                return None;
            }
        }
        Some(IdRemap {
            to_internal,
            to_external: ids,
        })
    }

    /// Identity remap over `0..n`.
    pub fn identity(n: usize) -> Self {
        Self::from_external((0..n as u64).collect()).expect("distinct ids")
    }

    pub fn len(&self) -> usize {
        self.to_external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_external.is_empty()
    }

    pub fn internal(&self, external: u64) -> Option<VertexId> {
        self.to_internal.get(&external).copied()
    }

    pub fn external(&self, internal: VertexId) -> u64 {
        self.to_external[internal]
    }

    pub fn externals(&self) -> &[u64] {
        &self.to_external
    }

    fn intern(&mut self, external: u64) -> VertexId {
        let next = self.to_external.len();
        *self.to_internal.entry(external).or_insert_with(|| {
            self.to_external.push(external);
            next
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    /// Drop vertices left without neighbours (only self-loops) instead of failing.
    pub strip_isolated: bool,
    /// Collapse repeated edges instead of failing.
    pub dedupe: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            strip_isolated: true,
            dedupe: true,
        }
    }
}

impl LoadOptions {
    /// Fails on any isolated vertex or repeated edge.
    pub fn strict() -> Self {
        LoadOptions {
            strip_isolated: false,
            dedupe: false,
        }
    }
}

/// Anomalies repaired while loading.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadWarnings {
    pub self_loops: usize,
    pub duplicates: usize,
    pub isolated_stripped: usize,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub remap: IdRemap,
    pub warnings: LoadWarnings,
}

fn parse_id(token: &str, line: usize) -> Result<u64, LoadError> {
    token.parse().map_err(|_| LoadError::Parse {
        line,
        message: format!("invalid vertex id {token:?}"),
    })
}

fn content_lines<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = Result<(usize, String), LoadError>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(LoadError::Io(e))),
            Ok(l) => {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    Some(Ok((i + 1, t.to_string())))
                }
            }
        })
}

/// Reads an edge list: one `u v` pair per line, `#` starts a comment line.
pub fn load_edge_list<R: BufRead>(
    reader: R,
    options: LoadOptions,
) -> Result<LoadedGraph, LoadError> {
    let mut seen = IdRemap::default();
    let mut edges = Vec::new();
    let mut warnings = LoadWarnings::default();

    for item in content_lines(reader) {
        let (line, text) = item?;
        let mut tokens = text.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(LoadError::Parse {
                    line,
                    message: "expected exactly two vertex ids".into(),
                })
            }
        };
        let (a, b) = (parse_id(a, line)?, parse_id(b, line)?);
        let (u, v) = (seen.intern(a), seen.intern(b));
        if u == v {
            warnings.self_loops += 1;
        } else {
            edges.push((u.min(v), u.max(v)));
        }
    }

    edges.sort_unstable();
    let before = edges.len();
    edges.dedup();
    warnings.duplicates = before - edges.len();
    if warnings.duplicates > 0 && !options.dedupe {
        return Err(LoadError::Invalid(ValidationReport {
            duplicates: warnings.duplicates,
            ..Default::default()
        }));
    }

    let mut has_edge = vec![false; seen.len()];
    for &(u, v) in &edges {
        has_edge[u] = true;
        has_edge[v] = true;
    }
    let isolated = has_edge.iter().filter(|&&h| !h).count();
    if isolated > 0 && !options.strip_isolated {
        return Err(LoadError::Invalid(ValidationReport {
            isolated,
            ..Default::default()
        }));
    }
    warnings.isolated_stripped = isolated;

    // Compact ids over the retained vertices, keeping first-appearance order.
    let mut compact = vec![usize::MAX; seen.len()];
    let mut kept = Vec::with_capacity(seen.len() - isolated);
    for (old, &keep) in has_edge.iter().enumerate() {
        if keep {
            compact[old] = kept.len();
            kept.push(seen.external(old));
        }
    }
    let remap = IdRemap::from_external(kept).expect("ids are distinct");
    let graph = Graph::from_edges(
        remap.len(),
        edges.into_iter().map(|(u, v)| (compact[u], compact[v])),
    )?;
    Ok(LoadedGraph {
        graph,
        remap,
        warnings,
    })
}

/// Writes each edge once as `u v`, translating ids through `remap`.
pub fn write_edge_list<W: Write>(graph: &Graph, remap: &IdRemap, mut out: W) -> io::Result<()> {
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", remap.external(u), remap.external(v))?;
    }
    Ok(())
}

/// Reads `vertex label` lines. Extra columns after the first label are ignored.
pub fn read_labels<R: BufRead>(reader: R) -> Result<BTreeMap<u64, u64>, LoadError> {
    let mut labels = BTreeMap::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let mut tokens = text.split_whitespace();
        let (Some(v), Some(c)) = (tokens.next(), tokens.next()) else {
            return Err(LoadError::Parse {
                line,
                message: "expected `vertex label`".into(),
            });
        };
        let v = parse_id(v, line)?;
        let c = parse_id(c, line)?;
        if labels.insert(v, c).is_some() {
            return Err(LoadError::DuplicateVertex(v));
        }
    }
    Ok(labels)
}

/// Writes one `vertex label` line per vertex in internal id order.
pub fn write_partition<W: Write>(
    partition: &Partition,
    remap: &IdRemap,
    mut out: W,
) -> io::Result<()> {
    for (v, &c) in partition.labels().iter().enumerate() {
        writeln!(out, "{} {}", remap.external(v), c)?;
    }
    Ok(())
}

/// Pulls the labels of the vertices known to `remap` into a dense partition.
/// Labels of vertices outside the remap are ignored.
pub fn partition_for(remap: &IdRemap, labels: &BTreeMap<u64, u64>) -> Result<Partition, LoadError> {
    let mut missing = Vec::new();
    let mut dense = Vec::with_capacity(remap.len());
    for &ext in remap.externals() {
        match labels.get(&ext) {
            Some(&c) => dense.push(c as usize),
            None => missing.push(ext),
        }
    }
    if !missing.is_empty() {
        missing.sort_unstable();
        return Err(LoadError::MissingLabels(missing));
    }
    Ok(Partition::from_labels(dense))
}

/// Lines up two labelings over the same external vertex set, in ascending id order.
pub fn align_labels(
    first: &BTreeMap<u64, u64>,
    second: &BTreeMap<u64, u64>,
) -> Result<(Partition, Partition), CarrierMismatch> {
    let only_first: Vec<u64> = first
        .keys()
        .filter(|k| !second.contains_key(k))
        .copied()
        .collect();
    let only_second: Vec<u64> = second
        .keys()
        .filter(|k| !first.contains_key(k))
        .copied()
        .collect();
    if !only_first.is_empty() || !only_second.is_empty() {
        return Err(CarrierMismatch {
            only_first,
            only_second,
        });
    }
    let p = Partition::from_labels(first.values().map(|&c| c as usize).collect());
    let q = Partition::from_labels(second.values().map(|&c| c as usize).collect());
    Ok((p, q))
}
