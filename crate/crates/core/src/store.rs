//! Edge storage split by classification.
//!
//! Left-to-right edges live in mirrored out/in adjacency lists (the
//! underlying acyclic graph); right-to-left edges live in a separate
//! insertion-ordered list and are invisible to every traversal. An edge is
//! recorded under exactly one of the two views.

use std::collections::HashMap;
use std::fmt;

use crate::error::GraphError;
use crate::representation::VertexId;

/// Directed edge, `source -> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

impl Edge {
    pub const fn new(source: VertexId, target: VertexId) -> Self {
        Edge { source, target }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

/// How an edge is stored: left-to-right in the representation (`Acyclic`,
/// part of the underlying acyclic graph) or right-to-left (`Cyclic`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Acyclic,
    Cyclic,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeClass::Acyclic => f.write_str("acyclic"),
            EdgeClass::Cyclic => f.write_str("cyclic"),
        }
    }
}

/// Adjacency for the acyclic view plus the ordered cyclic-edge list.
///
/// Neighbor sequences and the cyclic list iterate in insertion order, so two
/// stores built by the same operation sequence iterate identically.
#[derive(Debug, Clone, Default)]
pub struct AdjacencyStore {
    out_acyclic: HashMap<VertexId, Vec<VertexId>>,
    in_acyclic: HashMap<VertexId, Vec<VertexId>>,
    cyclic: Vec<Edge>,
}

impl AdjacencyStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Makes `v` known to the store with empty adjacency.
    pub fn register_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        if self.out_acyclic.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        self.out_acyclic.insert(v, Vec::new());
        self.in_acyclic.insert(v, Vec::new());
        Ok(())
    }

    /// Forgets `v`. The caller must have deleted all incident edges first.
    pub fn unregister_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let out = self
            .out_acyclic
            .remove(&v)
            .ok_or(GraphError::UnknownVertex(v))?;
        let inn = self.in_acyclic.remove(&v).unwrap_or_default();
        debug_assert!(out.is_empty() && inn.is_empty());
        debug_assert!(!self.cyclic.iter().any(|e| e.source == v || e.target == v));
        Ok(())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.out_acyclic.contains_key(&v)
    }

    pub fn insert_edge_record(&mut self, e: Edge, class: EdgeClass) -> Result<(), GraphError> {
        if !self.contains_vertex(e.source) {
            return Err(GraphError::UnknownVertex(e.source));
        }
        if !self.contains_vertex(e.target) {
            return Err(GraphError::UnknownVertex(e.target));
        }
        if self.edge_class(e).is_some() {
            return Err(GraphError::DuplicateEdge(e));
        }
        match class {
            EdgeClass::Acyclic => {
                self.out_acyclic.get_mut(&e.source).unwrap().push(e.target);
                self.in_acyclic.get_mut(&e.target).unwrap().push(e.source);
            }
            EdgeClass::Cyclic => self.cyclic.push(e),
        }
        Ok(())
    }

    /// Removes `e` from whichever view holds it and returns its class.
    pub fn delete_edge_record(&mut self, e: Edge) -> Result<EdgeClass, GraphError> {
        if let Some(out) = self.out_acyclic.get_mut(&e.source) {
            if let Some(pos) = out.iter().position(|&w| w == e.target) {
                out.remove(pos);
                let inn = self.in_acyclic.get_mut(&e.target).unwrap();
                let pos = inn.iter().position(|&w| w == e.source).unwrap();
                inn.remove(pos);
                return Ok(EdgeClass::Acyclic);
            }
        }
        if let Some(pos) = self.cyclic.iter().position(|&c| c == e) {
            self.cyclic.remove(pos);
            return Ok(EdgeClass::Cyclic);
        }
        Err(GraphError::UnknownEdge(e))
    }

    /// Classification lookup; `None` when the edge is not stored.
    pub fn edge_class(&self, e: Edge) -> Option<EdgeClass> {
        if let Some(out) = self.out_acyclic.get(&e.source) {
            if out.contains(&e.target) {
                return Some(EdgeClass::Acyclic);
            }
        }
        if self.cyclic.contains(&e) {
            return Some(EdgeClass::Cyclic);
        }
        None
    }

    /// Acyclic successors of `u`, insertion order.
    pub fn out_neighbors_acyclic(&self, u: VertexId) -> Result<&[VertexId], GraphError> {
        self.out_acyclic
            .get(&u)
            .map(Vec::as_slice)
            .ok_or(GraphError::UnknownVertex(u))
    }

    /// Acyclic predecessors of `v`, insertion order.
    pub fn in_neighbors_acyclic(&self, v: VertexId) -> Result<&[VertexId], GraphError> {
        self.in_acyclic
            .get(&v)
            .map(Vec::as_slice)
            .ok_or(GraphError::UnknownVertex(v))
    }

    /// Cyclic edges, insertion order.
    pub fn cyclic_edges(&self) -> &[Edge] {
        &self.cyclic
    }

    pub fn acyclic_edge_count(&self) -> usize {
        self.out_acyclic.values().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.acyclic_edge_count() + self.cyclic.len()
    }

    pub(crate) fn registered_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.out_acyclic.keys().copied()
    }

    pub(crate) fn in_list_len(&self, v: VertexId) -> usize {
        self.in_acyclic.get(&v).map_or(0, Vec::len)
    }

    #[cfg(test)]
    pub(crate) fn force_insert_acyclic(&mut self, e: Edge) {
        self.out_acyclic.entry(e.source).or_default().push(e.target);
        self.in_acyclic.entry(e.target).or_default().push(e.source);
    }

    #[cfg(test)]
    pub(crate) fn force_push_cyclic(&mut self, e: Edge) {
        self.cyclic.push(e);
    }
}
