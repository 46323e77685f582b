//! Local community detection driven by vertex-centred list agreement.
//!
//! Every vertex ranks its neighbours by degree, keeps the top half as its
//! candidate list, and joins the neighbour whose list overlaps its own the
//! most. Communities are the groups that these choices link together.
//!
//! ```
//! use agree::datasets::karate;
//! use agree::detection::{detect, DetectionParams};
//! use agree::metrics::nmi;
//!
//! let (graph, truth) = karate();
//! let found = detect(&graph, &DetectionParams::default()).unwrap();
//! assert!(nmi(&found.partition, &truth).unwrap() > 0.6);
//! ```
//!
//! Modules:
//!
//! - [`graph`], [`partition`] and [`io`]: graphs, partitions and their text formats;
//! - [`detection`]: the three detection steps;
//! - [`runtime`]: the same computation as a message protocol between vertex actors;
//! - [`generators`]: planted-partition and LFR-style benchmarks;
//! - [`metrics`]: ARI and NMI;
//! - [`bench`]: parameter sweeps with CSV output;
//! - [`datasets`]: Zachary's karate club and ground-truth cover evaluation.

pub mod bench;
pub mod datasets;
pub mod detection;
pub mod generators;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod partition;
pub mod rng;
pub mod runtime;

pub use detection::{detect, DetectionParams};
pub use graph::{Graph, VertexId};
pub use partition::Partition;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/agreement.md")]
    mod agreement {}
    #[doc = include_str!("../../../book/src/uncovering.md")]
    mod uncovering {}
    #[doc = include_str!("../../../book/src/runtime.md")]
    mod runtime {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
