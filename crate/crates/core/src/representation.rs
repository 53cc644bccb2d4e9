//! The vertex-to-position bijection that *is* the stored ordering.
//!
//! A [`TopologicalRepresentation`] keeps every live vertex at a slot in
//! `0..n`, with both directions of the lookup (vertex at a slot, slot of a
//! vertex) kept consistent under appends, removals and pool reassignments.
//! All reordering performed by the dynamic graph goes through
//! [`reassign_pool`](TopologicalRepresentation::reassign_pool), which permutes
//! a chosen set of slots and leaves every other vertex untouched.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::GraphError;

/// Opaque, stable handle for a vertex. Handles are assigned once at vertex
/// creation and are never reused within one graph's lifetime; reorders change
/// a vertex's [`OrderIndex`], never its id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u64);

impl VertexId {
    pub const fn new(raw: u64) -> Self {
        VertexId(raw)
    }

    pub const fn raw(self) -> u64 {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Position of a vertex in the representation. For a graph with `n` live
/// vertices the indices in use are exactly `0..n`, with no gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderIndex(usize);

impl OrderIndex {
    pub const fn new(position: usize) -> Self {
        OrderIndex(position)
    }

    pub const fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for OrderIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Mutually inverse maps between vertices and contiguous order indices.
#[derive(Debug, Clone, Default)]
pub struct TopologicalRepresentation {
    order: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
}

impl TopologicalRepresentation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of live vertices.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    /// All live vertices, position 0 first.
    pub fn vertices(&self) -> &[VertexId] {
        &self.order
    }

    /// Places `v` at the end of the ordering and returns its index.
    ///
    /// A fresh vertex has no edges, so any position keeps the ordering valid;
    /// the end avoids touching existing slots.
    pub fn append_vertex(&mut self, v: VertexId) -> Result<OrderIndex, GraphError> {
        if self.index.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        let slot = self.order.len();
        self.order.push(v);
        self.index.insert(v, slot);
        Ok(OrderIndex(slot))
    }

    /// Removes `v`'s slot, shifting every later vertex down by one so the
    /// index set stays contiguous. Returns the vacated index.
    pub fn remove_vertex_slot(&mut self, v: VertexId) -> Result<OrderIndex, GraphError> {
        let slot = self
            .index
            .remove(&v)
            .ok_or(GraphError::UnknownVertex(v))?;
        self.order.remove(slot);
        for (i, w) in self.order.iter().enumerate().skip(slot) {
            self.index.insert(*w, i);
        }
        Ok(OrderIndex(slot))
    }

    pub fn index_of(&self, v: VertexId) -> Result<OrderIndex, GraphError> {
        self.index
            .get(&v)
            .copied()
            .map(OrderIndex)
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub fn vertex_at(&self, i: OrderIndex) -> Result<VertexId, GraphError> {
        self.order
            .get(i.get())
            .copied()
            .ok_or(GraphError::IndexOutOfRange {
                index: i,
                len: self.order.len(),
            })
    }

    /// Permutes the slots occupied by `first ∪ second`: all indices currently
    /// held by either sequence form the pool, members of `first` (in the
    /// given order) take the smallest indices of the pool, members of
    /// `second` take the rest. Vertices outside the pool keep their indices.
    ///
    /// Both sequences must be disjoint and sorted ascending by current index;
    /// consequently no `first` member moves right and no `second` member
    /// moves left.
    pub fn reassign_pool(
        &mut self,
        first: &[VertexId],
        second: &[VertexId],
    ) -> Result<(), GraphError> {
        let first_indices = self.pool_indices(first)?;
        let second_indices = self.pool_indices(second)?;

        let seen: HashSet<VertexId> = first.iter().copied().collect();
        if let Some(&dup) = second.iter().find(|v| seen.contains(v)) {
            return Err(GraphError::OverlappingPools(dup));
        }

        let mut pool = Vec::with_capacity(first_indices.len() + second_indices.len());
        pool.extend_from_slice(&first_indices);
        pool.extend_from_slice(&second_indices);
        pool.sort_unstable();

        for (&slot, &v) in pool.iter().zip(first.iter().chain(second.iter())) {
            self.order[slot] = v;
            self.index.insert(v, slot);
        }
        Ok(())
    }

    /// Current indices of one pool side, validating it is strictly ascending.
    fn pool_indices(&self, side: &[VertexId]) -> Result<Vec<usize>, GraphError> {
        let mut indices = Vec::with_capacity(side.len());
        for &v in side {
            indices.push(self.index_of(v)?.get());
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GraphError::UnsortedPool);
        }
        Ok(indices)
    }

    #[cfg(test)]
    pub(crate) fn corrupt_swap_slots(&mut self, i: usize, j: usize) {
        // Deliberately skips the index map so the bijection breaks.
        self.order.swap(i, j);
    }
}
