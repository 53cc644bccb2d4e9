//! From-scratch batch algorithms used to cross-check the incremental graph.
//!
//! Everything here recomputes its answer from a raw vertex/edge listing and
//! deliberately shares none of the incremental machinery: the sort is
//! in-degree elimination, the closure is repeated DFS over its own adjacency.
//! Performance is a non-goal.

use std::collections::{BinaryHeap, HashMap, HashSet};
use std::cmp::Reverse;
use std::fmt;

use crate::graph::DynamicGraph;
use crate::representation::{OrderIndex, VertexId};
use crate::search;
use crate::store::Edge;

/// An edge referencing a vertex outside the given vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("edge {0} references a vertex outside the vertex set")]
pub struct DanglingEdge(pub Edge);

/// Ordering and cycle flag recomputed from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchSort {
    /// Present exactly when the graph is acyclic. Ties broken by smallest
    /// vertex id, so the output is deterministic.
    pub ordering: Option<Vec<VertexId>>,
    pub cyclic: bool,
}

/// Full batch recomputation: sort, cycle flag and reachability closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchResult {
    pub ordering: Option<Vec<VertexId>>,
    pub cyclic: bool,
    /// Reachability over the given edges as ordered pairs. Reflexive: every
    /// vertex reaches itself.
    pub closure: HashSet<(VertexId, VertexId)>,
}

/// In-degree elimination sort over the raw edge list, smallest-id-first
/// tie-break. Does not compute the closure; see [`batch_toposort`].
///
/// Ids issued consecutively (the common case) are indexed directly; widely
/// scattered ids fall back to hashed bookkeeping.
pub fn batch_sort(vertices: &[VertexId], edges: &[Edge]) -> Result<BatchSort, DanglingEdge> {
    let max_raw = match vertices.iter().map(|v| v.raw()).max() {
        Some(max) => max,
        None => {
            return match edges.first() {
                Some(&e) => Err(DanglingEdge(e)),
                None => Ok(BatchSort {
                    ordering: Some(Vec::new()),
                    cyclic: false,
                }),
            }
        }
    };
    if max_raw < 1024.max(vertices.len() as u64 * 16) {
        batch_sort_dense(vertices, edges, max_raw as usize)
    } else {
        batch_sort_sparse(vertices, edges)
    }
}

fn batch_sort_dense(
    vertices: &[VertexId],
    edges: &[Edge],
    max_raw: usize,
) -> Result<BatchSort, DanglingEdge> {
    let size = max_raw + 1;
    let mut live = vec![false; size];
    for v in vertices {
        live[v.raw() as usize] = true;
    }

    let mut in_degree = vec![0u32; size];
    let mut out_start = vec![0u32; size + 1];
    for e in edges {
        let (s, t) = (e.source.raw() as usize, e.target.raw() as usize);
        if s >= size || t >= size || !live[s] || !live[t] {
            return Err(DanglingEdge(*e));
        }
        in_degree[t] += 1;
        out_start[s + 1] += 1;
    }
    for i in 0..size {
        out_start[i + 1] += out_start[i];
    }
    let mut adjacency = vec![0u64; edges.len()];
    let mut cursor = out_start.clone();
    for e in edges {
        let s = e.source.raw() as usize;
        adjacency[cursor[s] as usize] = e.target.raw();
        cursor[s] += 1;
    }

    let mut ready: BinaryHeap<Reverse<u64>> = vertices
        .iter()
        .map(|v| v.raw())
        .filter(|&r| in_degree[r as usize] == 0)
        .map(Reverse)
        .collect();
    let mut ordering = Vec::with_capacity(vertices.len());
    while let Some(Reverse(r)) = ready.pop() {
        ordering.push(VertexId::new(r));
        let s = r as usize;
        for &t in &adjacency[out_start[s] as usize..out_start[s + 1] as usize] {
            in_degree[t as usize] -= 1;
            if in_degree[t as usize] == 0 {
                ready.push(Reverse(t));
            }
        }
    }

    Ok(finish_sort(ordering, vertices.len()))
}

fn batch_sort_sparse(vertices: &[VertexId], edges: &[Edge]) -> Result<BatchSort, DanglingEdge> {
    let mut in_degree: HashMap<VertexId, usize> = HashMap::with_capacity(vertices.len());
    in_degree.extend(vertices.iter().map(|&v| (v, 0)));
    for e in edges {
        if !in_degree.contains_key(&e.source) || !in_degree.contains_key(&e.target) {
            return Err(DanglingEdge(*e));
        }
    }

    let mut successors: HashMap<VertexId, Vec<VertexId>> = HashMap::with_capacity(vertices.len());
    for e in edges {
        *in_degree.get_mut(&e.target).unwrap() += 1;
        successors.entry(e.source).or_default().push(e.target);
    }

    let mut ready: BinaryHeap<Reverse<VertexId>> = in_degree
        .iter()
        .filter(|&(_, &d)| d == 0)
        .map(|(&v, _)| Reverse(v))
        .collect();
    let mut ordering = Vec::with_capacity(vertices.len());
    while let Some(Reverse(v)) = ready.pop() {
        ordering.push(v);
        for &w in successors.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let d = in_degree.get_mut(&w).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.push(Reverse(w));
            }
        }
    }

    Ok(finish_sort(ordering, vertices.len()))
}

fn finish_sort(ordering: Vec<VertexId>, vertex_count: usize) -> BatchSort {
    if ordering.len() == vertex_count {
        BatchSort {
            ordering: Some(ordering),
            cyclic: false,
        }
    } else {
        BatchSort {
            ordering: None,
            cyclic: true,
        }
    }
}

/// Reachability closure of the given edges by repeated DFS, including the
/// reflexive pairs.
pub fn reach_closure(vertices: &[VertexId], edges: &[Edge]) -> HashSet<(VertexId, VertexId)> {
    let mut successors: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for e in edges {
        successors.entry(e.source).or_default().push(e.target);
    }

    let mut closure = HashSet::new();
    for &start in vertices {
        let mut seen: HashSet<VertexId> = HashSet::new();
        let mut stack = vec![start];
        while let Some(w) = stack.pop() {
            if !seen.insert(w) {
                continue;
            }
            closure.insert((start, w));
            for &x in successors.get(&w).map(Vec::as_slice).unwrap_or(&[]) {
                if !seen.contains(&x) {
                    stack.push(x);
                }
            }
        }
    }
    closure
}

/// Full batch recomputation over a raw vertex/edge listing.
pub fn batch_toposort(
    vertices: &[VertexId],
    edges: &[Edge],
) -> Result<BatchResult, DanglingEdge> {
    let sort = batch_sort(vertices, edges)?;
    Ok(BatchResult {
        ordering: sort.ordering,
        cyclic: sort.cyclic,
        closure: reach_closure(vertices, edges),
    })
}

/// First edge whose source does not precede its target in `order`, if any.
/// An edge with an endpoint missing from `order` also counts as a violation.
pub fn order_violation(order: &[VertexId], edges: &[Edge]) -> Option<Edge> {
    let position: HashMap<VertexId, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    edges
        .iter()
        .find(|e| match (position.get(&e.source), position.get(&e.target)) {
            (Some(s), Some(t)) => s >= t,
            _ => true,
        })
        .copied()
}

pub fn is_valid_topological_order(order: &[VertexId], edges: &[Edge]) -> bool {
    order_violation(order, edges).is_none()
}

/// A disagreement between the incremental structure and the batch oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discrepancy {
    CycleFlag {
        incremental: bool,
        batch: bool,
    },
    /// The incremental ordering violates an edge of the full graph.
    OrderingInvalid {
        witness: Edge,
    },
    /// The oracle found the graph acyclic but the ordering was refused.
    OrderingMissing {
        cyclic_edges: usize,
    },
    /// Acyclic-only reachability from `from` differs between the two sides.
    Reachability {
        from: VertexId,
        incremental_only: Vec<VertexId>,
        batch_only: Vec<VertexId>,
    },
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::CycleFlag { incremental, batch } => write!(
                f,
                "cycle flag disagreement: incremental={incremental}, batch={batch}"
            ),
            Discrepancy::OrderingInvalid { witness } => {
                write!(f, "returned ordering violates edge {witness}")
            }
            Discrepancy::OrderingMissing { cyclic_edges } => write!(
                f,
                "ordering refused ({cyclic_edges} cyclic edges) on a graph the oracle calls acyclic"
            ),
            Discrepancy::Reachability {
                from,
                incremental_only,
                batch_only,
            } => write!(
                f,
                "reachability from {from} disagrees: {} extra incremental, {} extra batch",
                incremental_only.len(),
                batch_only.len()
            ),
        }
    }
}

/// Compares `g` against a from-scratch recomputation: cycle flag over the
/// full edge set, validity (not equality — many valid orders exist) of the
/// returned ordering, and the acyclic-only reachability relation against the
/// closure of the acyclic-classified edges.
pub fn differential_check(g: &DynamicGraph) -> Vec<Discrepancy> {
    let mut discrepancies = Vec::new();
    let vertices = g.vertices().to_vec();
    let all_edges: Vec<Edge> = g.edges().into_iter().map(|(e, _)| e).collect();
    let batch = batch_toposort(&vertices, &all_edges).expect("stored edges are live");

    if batch.cyclic != g.has_cycles() {
        discrepancies.push(Discrepancy::CycleFlag {
            incremental: g.has_cycles(),
            batch: batch.cyclic,
        });
    }

    if !batch.cyclic {
        match g.topological_ordering() {
            Ok(order) => {
                if let Some(witness) = order_violation(&order, &all_edges) {
                    discrepancies.push(Discrepancy::OrderingInvalid { witness });
                }
            }
            Err(err) => discrepancies.push(Discrepancy::OrderingMissing {
                cyclic_edges: err.cyclic_edges,
            }),
        }
    }

    if !vertices.is_empty() {
        let closure = reach_closure(&vertices, &g.acyclic_edges());
        let bound = OrderIndex::new(vertices.len() - 1);
        for &from in &vertices {
            let row = search::forward_reach(g.representation(), g.store(), from, bound, None)
                .expect("live vertex")
                .visited;
            let oracle_row: HashSet<VertexId> = vertices
                .iter()
                .copied()
                .filter(|&to| closure.contains(&(from, to)))
                .collect();
            if row != oracle_row {
                let mut incremental_only: Vec<VertexId> =
                    row.difference(&oracle_row).copied().collect();
                let mut batch_only: Vec<VertexId> =
                    oracle_row.difference(&row).copied().collect();
                incremental_only.sort_unstable();
                batch_only.sort_unstable();
                discrepancies.push(Discrepancy::Reachability {
                    from,
                    incremental_only,
                    batch_only,
                });
            }
        }
    }

    discrepancies
}
