use crate::representation::{OrderIndex, VertexId};
use crate::store::Edge;

/// Errors produced by graph mutations and queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} is already present")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: OrderIndex, len: usize },
    #[error("edge {0} is already present")]
    DuplicateEdge(Edge),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("vertex {0} appears in both pools")]
    OverlappingPools(VertexId),
    #[error("pool is not sorted ascending by current index")]
    UnsortedPool,
}

/// Returned by [`crate::DynamicGraph::topological_ordering`] when the graph
/// currently contains cycles. Carries the number of cyclic edges; the edges
/// themselves are available through [`crate::DynamicGraph::cyclic_edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("graph has {cyclic_edges} cyclic edge(s)")]
pub struct CyclicError {
    pub cyclic_edges: usize,
}
