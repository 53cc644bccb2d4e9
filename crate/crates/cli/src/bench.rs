//! Incremental maintenance versus batch recomputation on one trace.
//!
//! The trace is replayed twice. The incremental strategy maintains a
//! [`DynamicGraph`]. The batch strategy maintains only the raw vertex and
//! edge lists and recomputes a from-scratch topological sort after every
//! mutation. Both record the cycle flag after each op so the strategies can
//! be checked against each other.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use dyntopo::oracle;
use dyntopo::{DynamicGraph, Edge, VertexId};

use crate::trace::{OpKind, SemanticError, TraceOp};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchStats {
    pub incremental_ops: usize,
    pub batch_ops: usize,
    pub incremental_time: Duration,
    pub batch_time: Duration,
    /// Ops after which the two strategies disagreed on cycle existence.
    pub mismatches: usize,
}

impl fmt::Display for BenchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inc_ms = self.incremental_time.as_secs_f64() * 1e3;
        let batch_ms = self.batch_time.as_secs_f64() * 1e3;
        writeln!(f, "incremental_ops {}", self.incremental_ops)?;
        writeln!(f, "incremental_ms {inc_ms:.3}")?;
        writeln!(f, "batch_ops {}", self.batch_ops)?;
        writeln!(f, "batch_ms {batch_ms:.3}")?;
        if inc_ms > 0.0 {
            writeln!(f, "ratio {:.2}", batch_ms / inc_ms)?;
        } else {
            writeln!(f, "ratio inf")?;
        }
        write!(f, "mismatches {}", self.mismatches)
    }
}

/// Replays a mutation-only trace with both strategies and reports op counts,
/// wall time per strategy and their ratio.
pub fn bench_compare(ops: &[TraceOp]) -> Result<BenchStats, SemanticError> {
    if let Some(op) = ops.iter().find(|op| !op.kind.is_mutation()) {
        return Err(SemanticError {
            line: op.line,
            reason: "bench requires a mutation-only trace".to_string(),
        });
    }

    let (incremental_flags, incremental_time) = run_incremental(ops)?;
    let (batch_flags, batch_time) = run_batch(ops);

    let mismatches = incremental_flags
        .iter()
        .zip(batch_flags.iter())
        .filter(|(a, b)| a != b)
        .count();

    Ok(BenchStats {
        incremental_ops: ops.len(),
        batch_ops: ops.len(),
        incremental_time,
        batch_time,
        mismatches,
    })
}

fn run_incremental(ops: &[TraceOp]) -> Result<(Vec<bool>, Duration), SemanticError> {
    let mut graph = DynamicGraph::new();
    let mut id_of: HashMap<String, VertexId> = HashMap::new();
    let mut flags = Vec::with_capacity(ops.len());

    let resolve = |id_of: &HashMap<String, VertexId>,
                   graph: &DynamicGraph,
                   name: &str,
                   line: usize|
     -> Result<VertexId, SemanticError> {
        match id_of.get(name) {
            Some(&id) if graph.contains_vertex(id) => Ok(id),
            _ => Err(SemanticError {
                line,
                reason: format!("unknown node `{name}`"),
            }),
        }
    };

    let start = Instant::now();
    for op in ops {
        match &op.kind {
            OpKind::Node(name) => {
                if id_of.contains_key(name) {
                    return Err(SemanticError {
                        line: op.line,
                        reason: format!("duplicate node `{name}`"),
                    });
                }
                let id = graph.add_vertex();
                id_of.insert(name.clone(), id);
            }
            OpKind::DelNode(name) => {
                let id = resolve(&id_of, &graph, name, op.line)?;
                graph.remove_vertex(id).expect("resolved to live");
            }
            OpKind::Edge(u, v) => {
                let a = resolve(&id_of, &graph, u, op.line)?;
                let b = resolve(&id_of, &graph, v, op.line)?;
                graph.add_edge(a, b).expect("resolved to live");
            }
            OpKind::DelEdge(u, v) => {
                let a = resolve(&id_of, &graph, u, op.line)?;
                let b = resolve(&id_of, &graph, v, op.line)?;
                graph.remove_edge(a, b).map_err(|_| SemanticError {
                    line: op.line,
                    reason: format!("unknown edge `{u} {v}`"),
                })?;
            }
            _ => unreachable!("mutation-only trace"),
        }
        flags.push(graph.has_cycles());
    }
    Ok((flags, start.elapsed()))
}

/// The batch side keeps nothing but the raw listing; the sort is recomputed
/// in full after every op. Semantic validity was already established by the
/// incremental pass.
fn run_batch(ops: &[TraceOp]) -> (Vec<bool>, Duration) {
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut present: HashSet<Edge> = HashSet::new();
    let mut id_of: HashMap<String, VertexId> = HashMap::new();
    let mut next_id = 0u64;
    let mut flags = Vec::with_capacity(ops.len());

    let start = Instant::now();
    for op in ops {
        match &op.kind {
            OpKind::Node(name) => {
                let id = VertexId::new(next_id);
                next_id += 1;
                id_of.insert(name.clone(), id);
                vertices.push(id);
            }
            OpKind::DelNode(name) => {
                let id = id_of[name.as_str()];
                vertices.retain(|&v| v != id);
                edges.retain(|e| e.source != id && e.target != id);
                present.retain(|e| e.source != id && e.target != id);
            }
            OpKind::Edge(u, v) => {
                let e = Edge::new(id_of[u.as_str()], id_of[v.as_str()]);
                if present.insert(e) {
                    edges.push(e);
                }
            }
            OpKind::DelEdge(u, v) => {
                let e = Edge::new(id_of[u.as_str()], id_of[v.as_str()]);
                present.remove(&e);
                edges.retain(|&x| x != e);
            }
            _ => unreachable!("mutation-only trace"),
        }
        let sort = oracle::batch_sort(&vertices, &edges).expect("edges reference live vertices");
        flags.push(sort.cyclic);
    }
    (flags, start.elapsed())
}
