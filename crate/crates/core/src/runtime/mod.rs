//! Detection run as a message protocol between vertex actors, followed by
//! community uncovering by external pollers.
//!
//! Each actor only ever sees messages from its direct neighbours. Two
//! rounds suffice: degrees are announced, then candidate lists. Pollers then
//! merge each polled vertex with its preferred neighbour; any set of pollers
//! whose vertex subsets jointly cover the graph yields the same partition.

mod actors;
mod pollers;

pub use actors::{run_rounds, BusAudit, Message, MessageKind, Rounds, VertexActor};
pub use pollers::{poll_and_merge, ConcurrentUnionFind, CoverError, PollerPlan};
