//! Real-world graphs: the bundled Zachary karate club, and evaluation
//! against SNAP-style ground-truth covers such as the Amazon co-purchasing
//! network.

use std::io::BufRead;

use rand::seq::SliceRandom;

use crate::detection::{detect, DetectionParams, ParamError};
use crate::graph::Graph;
use crate::io::{load_edge_list, IdRemap, LoadError, LoadOptions};
use crate::metrics::{scores, Scores};
use crate::partition::Partition;
use crate::rng::vertex_rng;

const KARATE_EDGES: &str = include_str!("../data/karate.edges");
const KARATE_TRUTH: &str = include_str!("../data/karate.truth");

fn karate_pairs(text: &str) -> impl Iterator<Item = (usize, usize)> + '_ {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut t = l
                .split_whitespace()
                .map(|x| x.parse::<usize>().expect("bundled data"));
            (
                t.next().expect("bundled data"),
                t.next().expect("bundled data"),
            )
        })
}

/// Zachary's karate club and its two post-split factions.
///
/// Member `#i` in the usual 1-based numbering is vertex `i - 1`. Faction 0
/// followed the instructor, faction 1 the administrator.
pub fn karate() -> (Graph, Partition) {
    let graph = Graph::from_edges(34, karate_pairs(KARATE_EDGES).map(|(u, v)| (u - 1, v - 1)))
        .expect("bundled karate graph is valid");
    let mut labels = vec![0; 34];
    for (v, c) in karate_pairs(KARATE_TRUTH) {
        labels[v - 1] = c;
    }
    (graph, Partition::from_labels(labels))
}

/// The 1-based member numbers of the karate club.
pub fn karate_ids() -> IdRemap {
    IdRemap::from_external((1..=34).collect()).expect("distinct ids")
}

/// Reads a SNAP community file: one community per line, member ids
/// separated by whitespace.
pub fn read_cover<R: BufRead>(reader: R) -> Result<Vec<Vec<u64>>, LoadError> {
    let mut cover = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let members = t
            .split_whitespace()
            .map(|tok| {
                tok.parse().map_err(|_| LoadError::Parse {
                    line: i + 1,
                    message: format!("invalid vertex id {tok:?}"),
                })
            })
            .collect::<Result<Vec<u64>, _>>()?;
        cover.push(members);
    }
    Ok(cover)
}

/// Scores of a detected partition against a possibly overlapping cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverEvaluation {
    /// Vertices that belong to at least one ground-truth community.
    pub evaluated: usize,
    pub scores: Scores,
}

/// Compares `detected` with a ground-truth cover. Vertices outside every
/// cover community are left out; a vertex in several communities keeps one
/// of them, drawn from its own stream under `seed`.
pub fn evaluate_against_cover(
    detected: &Partition,
    remap: &IdRemap,
    cover: &[Vec<u64>],
    seed: u64,
) -> CoverEvaluation {
    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); remap.len()];
    for (c, members) in cover.iter().enumerate() {
        for &ext in members {
            if let Some(v) = remap.internal(ext) {
                memberships[v].push(c);
            }
        }
    }
    let mut predicted = Vec::new();
    let mut truth = Vec::new();
    for (v, communities) in memberships.iter().enumerate() {
        let chosen = match communities.len() {
            0 => continue,
            1 => communities[0],
            _ => *communities
                .choose(&mut vertex_rng(seed, v))
                .expect("non-empty"),
        };
        predicted.push(detected.label(v));
        truth.push(chosen);
    }
    let evaluated = truth.len();
    let scores = scores(
        &Partition::from_labels(predicted),
        &Partition::from_labels(truth),
    )
    .expect("equal lengths by construction");
    CoverEvaluation { evaluated, scores }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverRun {
    pub n: usize,
    pub m: usize,
    pub communities: usize,
    pub evaluation: CoverEvaluation,
}

#[derive(Debug, thiserror::Error)]
pub enum CoverRunError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Params(#[from] ParamError),
}

/// Loads an edge list and a ground-truth cover, detects communities and
/// scores them.
pub fn detect_and_evaluate<R1: BufRead, R2: BufRead>(
    edges: R1,
    cover: R2,
    params: &DetectionParams,
) -> Result<CoverRun, CoverRunError> {
    let loaded = load_edge_list(edges, LoadOptions::default())?;
    let cover = read_cover(cover)?;
    let detection = detect(&loaded.graph, params)?;
    let evaluation =
        evaluate_against_cover(&detection.partition, &loaded.remap, &cover, params.seed);
    Ok(CoverRun {
        n: loaded.graph.n(),
        m: loaded.graph.m(),
        communities: cover.len(),
        evaluation,
    })
}
