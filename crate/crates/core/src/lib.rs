//! Incremental topological ordering for directed graphs, with cycles
//! tolerated instead of rejected.
//!
//! The graph is stored *as* an ordering of its vertices. An edge that fits
//! left-to-right is part of the underlying acyclic graph; an edge that would
//! close a cycle is still kept, classified cyclic, and ignored by every
//! traversal. Whenever removals break the last cycle through such an edge it
//! is promoted back into the acyclic graph, so a valid topological ordering
//! is available the instant the graph becomes acyclic — reading it back is
//! just returning the stored vertex sequence.
//!
//! ```
//! use dyntopo::DynamicGraph;
//!
//! let mut g = DynamicGraph::new();
//! let a = g.add_vertex();
//! let b = g.add_vertex();
//! g.add_edge(a, b)?; // fits the ordering
//! g.add_edge(b, a)?; // closes a cycle: kept, classified cyclic
//! assert!(g.has_cycles());
//!
//! let report = g.remove_edge(a, b)?; // cycle broken, b -> a promoted
//! assert_eq!(report.promoted.len(), 1);
//! assert_eq!(g.topological_ordering().unwrap(), vec![b, a]);
//! # Ok::<(), dyntopo::GraphError>(())
//! ```
//!
//! The `oracle` module holds independent from-scratch batch algorithms
//! (sort, cycle detection, reachability closure) used to cross-check the
//! incremental structure in differential tests.

#![forbid(unsafe_code)]

pub mod error;
pub mod graph;
pub mod oracle;
pub mod representation;
pub mod search;
pub mod store;

pub use error::{CyclicError, GraphError};
pub use graph::{DynamicGraph, PromotionReport, Violation};
pub use representation::{OrderIndex, TopologicalRepresentation, VertexId};
pub use search::{backward_reach, forward_reach, ReachResult};
pub use store::{AdjacencyStore, Edge, EdgeClass};
