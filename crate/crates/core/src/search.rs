//! Depth-first reachability over the acyclic view only.
//!
//! Cyclic edges are never traversed, so reachability always pertains to the
//! underlying acyclic graph. Searches are bounded to an index region: since
//! indices strictly increase along acyclic paths, a forward search capped at
//! the inserted edge's source index (and a backward search floored at its
//! target index) still sees every path that matters for classification.

use std::collections::HashSet;

use crate::error::GraphError;
use crate::representation::{OrderIndex, TopologicalRepresentation, VertexId};
use crate::store::AdjacencyStore;

/// Outcome of one search. `visited` contains every vertex the search reached
/// within its bound, always including the start when the start itself
/// satisfies the bound; with an early goal hit it may be a prefix of the full
/// reachable set, but always contains the goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachResult {
    pub hit_goal: bool,
    pub visited: HashSet<VertexId>,
}

enum Direction {
    Forward,
    Backward,
}

/// Vertices reachable from `start` along acyclic edges, visiting only
/// vertices with index `<= upper_bound`. Stops early if `goal` is reached.
pub fn forward_reach(
    rep: &TopologicalRepresentation,
    store: &AdjacencyStore,
    start: VertexId,
    upper_bound: OrderIndex,
    goal: Option<VertexId>,
) -> Result<ReachResult, GraphError> {
    rep.index_of(start)?;
    if upper_bound.get() >= rep.len() {
        return Err(GraphError::IndexOutOfRange {
            index: upper_bound,
            len: rep.len(),
        });
    }
    reach(rep, store, start, Direction::Forward, upper_bound, goal)
}

/// Vertices that reach `start` along acyclic edges, visiting only vertices
/// with index `>= lower_bound`. No goal: the result's `hit_goal` is false.
pub fn backward_reach(
    rep: &TopologicalRepresentation,
    store: &AdjacencyStore,
    start: VertexId,
    lower_bound: OrderIndex,
) -> Result<ReachResult, GraphError> {
    rep.index_of(start)?;
    reach(rep, store, start, Direction::Backward, lower_bound, None)
}

fn reach(
    rep: &TopologicalRepresentation,
    store: &AdjacencyStore,
    start: VertexId,
    direction: Direction,
    bound: OrderIndex,
    goal: Option<VertexId>,
) -> Result<ReachResult, GraphError> {
    let admissible = |idx: OrderIndex| match direction {
        Direction::Forward => idx <= bound,
        Direction::Backward => idx >= bound,
    };

    let mut visited = HashSet::new();
    if !admissible(rep.index_of(start)?) {
        return Ok(ReachResult {
            hit_goal: false,
            visited,
        });
    }

    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        if !visited.insert(w) {
            continue;
        }
        if goal == Some(w) {
            return Ok(ReachResult {
                hit_goal: true,
                visited,
            });
        }
        let neighbors = match direction {
            Direction::Forward => store.out_neighbors_acyclic(w)?,
            Direction::Backward => store.in_neighbors_acyclic(w)?,
        };
        // Reverse push so pop order matches insertion order.
        for &x in neighbors.iter().rev() {
            if !visited.contains(&x) && admissible(rep.index_of(x)?) {
                stack.push(x);
            }
        }
    }

    Ok(ReachResult {
        hit_goal: false,
        visited,
    })
}
