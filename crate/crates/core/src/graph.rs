//! The dynamic graph: classify-and-add edges, remove with promotion rescan.
//!
//! A [`DynamicGraph`] keeps three things in lockstep: the vertex ordering
//! ([`TopologicalRepresentation`]), the classified edge store
//! ([`AdjacencyStore`]) and a fresh-id counter. Edges are always accepted;
//! an edge whose insertion would create a cycle is recorded as cyclic and
//! skipped by every traversal, so the acyclic remainder stays a valid
//! topological ordering at all times. Removing an acyclic edge triggers one
//! rescan of the cyclic list, promoting every edge whose source is no longer
//! reachable from its target.
//!
//! Invariants maintained by every public operation:
//!
//! * every acyclic edge runs left-to-right in the representation;
//! * every cyclic edge's source is reachable from its target over acyclic
//!   edges alone;
//! * the graph has a cycle exactly when the cyclic list is nonempty.

use std::collections::HashMap;
use std::fmt;

use crate::error::{CyclicError, GraphError};
use crate::representation::{OrderIndex, TopologicalRepresentation, VertexId};
use crate::search::{self, ReachResult};
use crate::store::{AdjacencyStore, Edge, EdgeClass};

/// Cyclic edges converted to acyclic by one removal-triggered rescan, in
/// promotion order. Every listed edge is classified acyclic once the
/// operation returns.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PromotionReport {
    pub promoted: Vec<Edge>,
}

impl PromotionReport {
    pub fn is_empty(&self) -> bool {
        self.promoted.is_empty()
    }

    pub fn len(&self) -> usize {
        self.promoted.len()
    }
}

/// A directed graph stored as a topological representation.
#[derive(Debug, Clone, Default)]
pub struct DynamicGraph {
    rep: TopologicalRepresentation,
    store: AdjacencyStore,
    next_id: u64,
}

impl DynamicGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Issues a fresh vertex and appends it at the end of the ordering.
    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId::new(self.next_id);
        self.next_id += 1;
        self.rep.append_vertex(v).expect("fresh id collides");
        self.store.register_vertex(v).expect("fresh id collides");
        v
    }

    /// Adds `source -> target` and returns its classification.
    ///
    /// The edge is kept either way: if `source` is reachable from `target`
    /// over acyclic edges (or the edge is a self-loop) it is recorded cyclic
    /// with no reorder; otherwise it is recorded acyclic, reordering the
    /// affected region when the edge currently points right-to-left. Adding
    /// an edge that is already present is a no-op returning its class.
    pub fn add_edge(&mut self, source: VertexId, target: VertexId) -> Result<EdgeClass, GraphError> {
        self.rep.index_of(source)?;
        self.rep.index_of(target)?;
        let e = Edge::new(source, target);
        if let Some(existing) = self.store.edge_class(e) {
            return Ok(existing);
        }
        let class = self.classify_and_place(source, target);
        self.store
            .insert_edge_record(e, class)
            .expect("edge was checked absent");
        Ok(class)
    }

    /// Runs the classification test for an absent edge and, when the result
    /// is acyclic but right-to-left, reorders so it fits. Does not touch the
    /// edge record itself.
    fn classify_and_place(&mut self, source: VertexId, target: VertexId) -> EdgeClass {
        if source == target {
            return EdgeClass::Cyclic;
        }
        let source_index = self.rep.index_of(source).expect("live vertex");
        let target_index = self.rep.index_of(target).expect("live vertex");
        if source_index < target_index {
            return EdgeClass::Acyclic;
        }

        let forward =
            search::forward_reach(&self.rep, &self.store, target, source_index, Some(source))
                .expect("bound within range");
        if forward.hit_goal {
            return EdgeClass::Cyclic;
        }

        let backward = search::backward_reach(&self.rep, &self.store, source, target_index)
            .expect("start is live");
        let source_set = self.sorted_by_index(&backward); // moves left
        let target_set = self.sorted_by_index(&forward); // moves right
        self.rep
            .reassign_pool(&source_set, &target_set)
            .expect("search regions are disjoint and index-sorted");
        EdgeClass::Acyclic
    }

    fn sorted_by_index(&self, result: &ReachResult) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = result.visited.iter().copied().collect();
        vs.sort_unstable_by_key(|&w| self.rep.index_of(w).expect("visited vertex is live"));
        vs
    }

    /// Deletes `source -> target`. Removing an acyclic edge never reorders,
    /// but may allow cyclic edges to be promoted: one rescan pass runs and
    /// its promotions are reported. Removing a cyclic edge leaves the
    /// acyclic graph untouched, so no rescan is needed.
    pub fn remove_edge(
        &mut self,
        source: VertexId,
        target: VertexId,
    ) -> Result<PromotionReport, GraphError> {
        let class = self.store.delete_edge_record(Edge::new(source, target))?;
        match class {
            EdgeClass::Cyclic => Ok(PromotionReport::default()),
            EdgeClass::Acyclic => Ok(self.rescan_cyclic_edges()),
        }
    }

    /// Deletes `v` with all incident edges of both classes, then rescans
    /// once. The rescan runs after all incident edges are gone, so no
    /// transient promotion can be contradicted by a later incident deletion.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<PromotionReport, GraphError> {
        self.rep.index_of(v)?;

        let out: Vec<VertexId> = self.store.out_neighbors_acyclic(v)?.to_vec();
        let inn: Vec<VertexId> = self.store.in_neighbors_acyclic(v)?.to_vec();
        for w in out {
            self.store
                .delete_edge_record(Edge::new(v, w))
                .expect("listed edge exists");
        }
        for w in inn {
            self.store
                .delete_edge_record(Edge::new(w, v))
                .expect("listed edge exists");
        }
        let incident_cyclic: Vec<Edge> = self
            .store
            .cyclic_edges()
            .iter()
            .copied()
            .filter(|e| e.source == v || e.target == v)
            .collect();
        for e in incident_cyclic {
            self.store.delete_edge_record(e).expect("listed edge exists");
        }

        self.store.unregister_vertex(v).expect("vertex is live");
        self.rep.remove_vertex_slot(v).expect("vertex is live");
        Ok(self.rescan_cyclic_edges())
    }

    /// One pass over the cyclic list in insertion order, promoting every
    /// edge whose source is no longer reachable from its target. Promotions
    /// take effect immediately, so later checks in the same pass see them.
    /// Idempotent: a promotion only grows reachability, so an edge that
    /// stayed cyclic in one pass stays cyclic in an immediate second pass.
    pub fn rescan_cyclic_edges(&mut self) -> PromotionReport {
        let mut promoted = Vec::new();
        let snapshot: Vec<Edge> = self.store.cyclic_edges().to_vec();
        for e in snapshot {
            let class = self.classify_and_place(e.source, e.target);
            if class == EdgeClass::Acyclic {
                self.store.delete_edge_record(e).expect("still recorded");
                self.store
                    .insert_edge_record(e, EdgeClass::Acyclic)
                    .expect("just deleted");
                promoted.push(e);
            }
        }
        PromotionReport { promoted }
    }

    /// The ordering itself, when the graph is acyclic. No computation over
    /// edges happens: the stored representation is returned as-is.
    pub fn topological_ordering(&self) -> Result<Vec<VertexId>, CyclicError> {
        let cyclic_edges = self.store.cyclic_edges().len();
        if cyclic_edges == 0 {
            Ok(self.rep.vertices().to_vec())
        } else {
            Err(CyclicError { cyclic_edges })
        }
    }

    /// Whether `to` is reachable from `from` over acyclic edges alone
    /// (reflexively: every vertex reaches itself). Cyclic edges never count.
    pub fn is_reachable_acyclic(&self, from: VertexId, to: VertexId) -> Result<bool, GraphError> {
        self.rep.index_of(to)?;
        let bound = OrderIndex::new(self.rep.len() - 1);
        let result = search::forward_reach(&self.rep, &self.store, from, bound, Some(to))?;
        Ok(result.hit_goal)
    }

    pub fn has_cycles(&self) -> bool {
        !self.store.cyclic_edges().is_empty()
    }

    pub fn cyclic_edge_count(&self) -> usize {
        self.store.cyclic_edges().len()
    }

    pub fn vertex_count(&self) -> usize {
        self.rep.len()
    }

    pub fn edge_count(&self) -> usize {
        self.store.edge_count()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.rep.contains(v)
    }

    pub fn edge_class(&self, source: VertexId, target: VertexId) -> Option<EdgeClass> {
        self.store.edge_class(Edge::new(source, target))
    }

    /// Live vertices in representation order.
    pub fn vertices(&self) -> &[VertexId] {
        self.rep.vertices()
    }

    /// Acyclic edges, sources in representation order, targets in insertion
    /// order per source.
    pub fn acyclic_edges(&self) -> Vec<Edge> {
        let mut edges = Vec::new();
        for &u in self.rep.vertices() {
            for &w in self.store.out_neighbors_acyclic(u).expect("live vertex") {
                edges.push(Edge::new(u, w));
            }
        }
        edges
    }

    /// Cyclic edges in insertion order.
    pub fn cyclic_edges(&self) -> &[Edge] {
        self.store.cyclic_edges()
    }

    /// Every stored edge with its classification; acyclic first.
    pub fn edges(&self) -> Vec<(Edge, EdgeClass)> {
        let mut all: Vec<(Edge, EdgeClass)> = self
            .acyclic_edges()
            .into_iter()
            .map(|e| (e, EdgeClass::Acyclic))
            .collect();
        all.extend(self.cyclic_edges().iter().map(|&e| (e, EdgeClass::Cyclic)));
        all
    }

    pub fn representation(&self) -> &TopologicalRepresentation {
        &self.rep
    }

    pub fn store(&self) -> &AdjacencyStore {
        &self.store
    }

    /// Audits the whole structure and reports every broken invariant with a
    /// witness. Empty for any graph built solely through public operations.
    pub fn check_invariants(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        self.check_bijection(&mut violations);
        self.check_registration(&mut violations);
        self.check_mirror_and_partition(&mut violations);
        self.check_order_validity(&mut violations);
        self.check_cyclic_soundness(&mut violations);
        self.check_cycle_criterion(&mut violations);
        violations
    }

    fn check_bijection(&self, out: &mut Vec<Violation>) {
        for (i, &w) in self.rep.vertices().iter().enumerate() {
            match self.rep.index_of(w) {
                Ok(idx) if idx.get() == i => {}
                _ => out.push(Violation::BijectionBroken { vertex: w }),
            }
        }
        let n = self.rep.vertices().len();
        let mapped = self
            .rep
            .vertices()
            .iter()
            .filter(|&&w| self.rep.index_of(w).is_ok())
            .count();
        if mapped != n {
            out.push(Violation::ContiguityBroken {
                expected: n,
                actual: mapped,
            });
        }
    }

    fn check_registration(&self, out: &mut Vec<Violation>) {
        for &w in self.rep.vertices() {
            if !self.store.contains_vertex(w) {
                out.push(Violation::UnregisteredVertex { vertex: w });
            }
        }
        for w in self.store.registered_vertices() {
            if !self.rep.contains(w) {
                out.push(Violation::UnregisteredVertex { vertex: w });
            }
        }
    }

    fn check_mirror_and_partition(&self, out: &mut Vec<Violation>) {
        let mut in_entries = 0usize;
        for &u in self.rep.vertices() {
            let Ok(neighbors) = self.store.out_neighbors_acyclic(u) else {
                continue;
            };
            for (i, &w) in neighbors.iter().enumerate() {
                let e = Edge::new(u, w);
                if neighbors[..i].contains(&w) {
                    out.push(Violation::DuplicateRecord { edge: e });
                }
                if !self.rep.contains(w) {
                    out.push(Violation::DanglingEdge { edge: e });
                    continue;
                }
                let mirrored = self
                    .store
                    .in_neighbors_acyclic(w)
                    .map(|ins| ins.contains(&u))
                    .unwrap_or(false);
                if !mirrored {
                    out.push(Violation::MirrorMismatch { edge: e });
                }
                if self.store.cyclic_edges().contains(&e) {
                    out.push(Violation::PartitionOverlap { edge: e });
                }
            }
        }
        for &w in self.rep.vertices() {
            in_entries += self.store.in_list_len(w);
        }
        if in_entries != self.store.acyclic_edge_count() {
            // Some in-entry has no out-entry; find one for the witness.
            for &w in self.rep.vertices() {
                let Ok(preds) = self.store.in_neighbors_acyclic(w) else {
                    continue;
                };
                for &u in preds {
                    let mirrored = self
                        .store
                        .out_neighbors_acyclic(u)
                        .map(|outs| outs.contains(&w))
                        .unwrap_or(false);
                    if !mirrored {
                        out.push(Violation::MirrorMismatch {
                            edge: Edge::new(u, w),
                        });
                    }
                }
            }
        }
        let cyclic = self.store.cyclic_edges();
        for (i, &e) in cyclic.iter().enumerate() {
            if cyclic[..i].contains(&e) {
                out.push(Violation::DuplicateRecord { edge: e });
            }
            if !self.rep.contains(e.source) || !self.rep.contains(e.target) {
                out.push(Violation::DanglingEdge { edge: e });
            }
        }
    }

    fn check_order_validity(&self, out: &mut Vec<Violation>) {
        for e in self.acyclic_edges() {
            let (Ok(iu), Ok(iv)) = (self.rep.index_of(e.source), self.rep.index_of(e.target))
            else {
                continue; // already reported as dangling
            };
            if iu >= iv {
                out.push(Violation::OrderInverted { edge: e });
            }
        }
    }

    fn check_cyclic_soundness(&self, out: &mut Vec<Violation>) {
        if self.rep.is_empty() {
            return;
        }
        let bound = OrderIndex::new(self.rep.len() - 1);
        for &e in self.store.cyclic_edges() {
            if !self.rep.contains(e.source) || !self.rep.contains(e.target) {
                continue;
            }
            let reachable =
                search::forward_reach(&self.rep, &self.store, e.target, bound, Some(e.source))
                    .map(|r| r.hit_goal)
                    .unwrap_or(false);
            if !reachable {
                out.push(Violation::CyclicUnreachable { edge: e });
            }
        }
    }

    fn check_cycle_criterion(&self, out: &mut Vec<Violation>) {
        let flagged = !self.store.cyclic_edges().is_empty();
        let found = self.full_graph_has_cycle();
        if flagged != found {
            out.push(Violation::CycleCriterionBroken {
                cyclic_edges: self.store.cyclic_edges().len(),
                cycle_found: found,
            });
        }
    }

    /// Self-contained cycle detection over the full edge set, independent of
    /// the stored classification.
    fn full_graph_has_cycle(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut successors: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
        for (e, _) in self.edges() {
            successors.entry(e.source).or_default().push(e.target);
        }
        let mut color: HashMap<VertexId, Color> = self
            .rep
            .vertices()
            .iter()
            .map(|&w| (w, Color::White))
            .collect();

        for &root in self.rep.vertices() {
            if color.get(&root) != Some(&Color::White) {
                continue;
            }
            let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
            color.insert(root, Color::Gray);
            while let Some(&(w, next)) = stack.last() {
                let succ = successors.get(&w).map(Vec::as_slice).unwrap_or(&[]);
                if next < succ.len() {
                    stack.last_mut().unwrap().1 += 1;
                    let x = succ[next];
                    match color.get(&x).copied() {
                        Some(Color::Gray) => return true,
                        Some(Color::White) => {
                            color.insert(x, Color::Gray);
                            stack.push((x, 0));
                        }
                        _ => {}
                    }
                } else {
                    color.insert(w, Color::Black);
                    stack.pop();
                }
            }
        }
        false
    }

    #[cfg(test)]
    pub(crate) fn store_mut(&mut self) -> &mut AdjacencyStore {
        &mut self.store
    }

    #[cfg(test)]
    pub(crate) fn rep_mut(&mut self) -> &mut TopologicalRepresentation {
        &mut self.rep
    }
}

/// One broken invariant, with the witness that broke it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// An acyclic edge does not run left-to-right.
    OrderInverted { edge: Edge },
    /// A cyclic edge whose source is not reachable from its target.
    CyclicUnreachable { edge: Edge },
    /// Cycle existence disagrees with cyclic-list emptiness.
    CycleCriterionBroken { cyclic_edges: usize, cycle_found: bool },
    BijectionBroken { vertex: VertexId },
    ContiguityBroken { expected: usize, actual: usize },
    MirrorMismatch { edge: Edge },
    PartitionOverlap { edge: Edge },
    DuplicateRecord { edge: Edge },
    DanglingEdge { edge: Edge },
    UnregisteredVertex { vertex: VertexId },
}

impl Violation {
    /// Short name of the invariant this violation breaks.
    pub fn invariant(&self) -> &'static str {
        match self {
            Violation::OrderInverted { .. } => "order-validity",
            Violation::CyclicUnreachable { .. } => "cyclic-soundness",
            Violation::CycleCriterionBroken { .. } => "cycle-criterion",
            Violation::BijectionBroken { .. } => "bijection",
            Violation::ContiguityBroken { .. } => "contiguity",
            Violation::MirrorMismatch { .. } => "mirror-consistency",
            Violation::PartitionOverlap { .. } => "partition",
            Violation::DuplicateRecord { .. } => "edge-uniqueness",
            Violation::DanglingEdge { .. } => "edge-liveness",
            Violation::UnregisteredVertex { .. } => "vertex-registry",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OrderInverted { edge } => {
                write!(f, "order-validity: acyclic edge {edge} is not left-to-right")
            }
            Violation::CyclicUnreachable { edge } => write!(
                f,
                "cyclic-soundness: source of cyclic edge {edge} is unreachable from its target"
            ),
            Violation::CycleCriterionBroken {
                cyclic_edges,
                cycle_found,
            } => write!(
                f,
                "cycle-criterion: {cyclic_edges} cyclic edge(s) recorded but cycle search found {cycle_found}"
            ),
            Violation::BijectionBroken { vertex } => {
                write!(f, "bijection: index lookup disagrees for {vertex}")
            }
            Violation::ContiguityBroken { expected, actual } => {
                write!(f, "contiguity: {actual} mapped indices for {expected} vertices")
            }
            Violation::MirrorMismatch { edge } => {
                write!(f, "mirror-consistency: {edge} is missing its mirrored entry")
            }
            Violation::PartitionOverlap { edge } => {
                write!(f, "partition: {edge} is recorded in both views")
            }
            Violation::DuplicateRecord { edge } => {
                write!(f, "edge-uniqueness: {edge} is recorded twice")
            }
            Violation::DanglingEdge { edge } => {
                write!(f, "edge-liveness: {edge} touches a dead vertex")
            }
            Violation::UnregisteredVertex { vertex } => {
                write!(f, "vertex-registry: {vertex} is known to only one side")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn add_vertex_issues_distinct_ids_in_order() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        assert_ne!(a, b);
        assert_eq!(g.vertices(), &[a, b]);
        assert!(g.check_invariants().is_empty());
    }

    #[test]
    fn ids_are_not_reused_after_removal() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        g.remove_vertex(a).unwrap();
        let b = g.add_vertex();
        assert_ne!(a, b);
    }

    #[test]
    fn left_to_right_edge_needs_no_reorder() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        assert_eq!(g.add_edge(a, b).unwrap(), EdgeClass::Acyclic);
        assert_eq!(g.vertices(), &[a, b]);
    }

    #[test]
    fn closing_edge_is_kept_cyclic_without_reorder() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        assert_eq!(g.add_edge(b, a).unwrap(), EdgeClass::Cyclic);
        assert_eq!(g.vertices(), &[a, b]);
        assert_eq!(g.cyclic_edges(), &[Edge::new(b, a)]);
    }

    #[test]
    fn right_to_left_edge_reorders() {
        // order [y,m,x], no edges; adding x->y must yield [x,m,y].
        let mut g = DynamicGraph::new();
        let y = g.add_vertex();
        let m = g.add_vertex();
        let x = g.add_vertex();
        assert_eq!(g.add_edge(x, y).unwrap(), EdgeClass::Acyclic);
        assert_eq!(g.vertices(), &[x, m, y]);
    }

    #[test]
    fn interleaved_reorder_matches_pool_rule() {
        // order [a,t,b,f,s,c] with edge t->f; adding s->t moves the source
        // set {s} left and the target set {t,f} right: [a,s,b,t,f,c].
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let t = g.add_vertex();
        let b = g.add_vertex();
        let f = g.add_vertex();
        let s = g.add_vertex();
        let c = g.add_vertex();
        g.add_edge(t, f).unwrap();
        assert_eq!(g.add_edge(s, t).unwrap(), EdgeClass::Acyclic);
        assert_eq!(g.vertices(), &[a, s, b, t, f, c]);

        let order = g.topological_ordering().unwrap();
        assert!(oracle::order_violation(&order, &g.acyclic_edges()).is_none());
    }

    #[test]
    fn self_loop_is_cyclic() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        assert_eq!(g.add_edge(a, a).unwrap(), EdgeClass::Cyclic);
        assert!(g.has_cycles());
        assert!(g.check_invariants().is_empty());
    }

    #[test]
    fn duplicate_add_is_noop_returning_class() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        assert_eq!(g.add_edge(a, b).unwrap(), EdgeClass::Acyclic);
        assert_eq!(g.add_edge(a, b).unwrap(), EdgeClass::Acyclic);
        assert_eq!(g.edge_count(), 1);

        g.add_edge(b, a).unwrap();
        assert_eq!(g.add_edge(b, a).unwrap(), EdgeClass::Cyclic);
        assert_eq!(g.cyclic_edge_count(), 1);
    }

    #[test]
    fn add_edge_unknown_vertex() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let ghost = VertexId::new(99);
        assert_eq!(g.add_edge(a, ghost), Err(GraphError::UnknownVertex(ghost)));
    }

    #[test]
    fn removing_the_blocker_promotes() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, a).unwrap();

        let report = g.remove_edge(a, b).unwrap();
        assert_eq!(report.promoted, vec![Edge::new(b, a)]);
        assert_eq!(g.edge_class(b, a), Some(EdgeClass::Acyclic));
        assert_eq!(g.vertices(), &[b, a]);
        assert!(!g.has_cycles());
        assert!(g.check_invariants().is_empty());
    }

    #[test]
    fn removing_plain_acyclic_edge_reports_nothing() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        let report = g.remove_edge(a, b).unwrap();
        assert!(report.is_empty());
        assert_eq!(g.vertices(), &[a, b]);
    }

    #[test]
    fn breaking_a_three_cycle_promotes_the_survivor() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        let c = g.add_vertex();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, c).unwrap();
        assert_eq!(g.add_edge(c, a).unwrap(), EdgeClass::Cyclic);

        let report = g.remove_edge(b, c).unwrap();
        assert_eq!(report.promoted, vec![Edge::new(c, a)]);
        assert!(!g.has_cycles());

        let order = g.topological_ordering().unwrap();
        assert!(oracle::order_violation(&order, &g.acyclic_edges()).is_none());
        assert_eq!(g.edge_class(a, b), Some(EdgeClass::Acyclic));
        assert_eq!(g.edge_class(c, a), Some(EdgeClass::Acyclic));
        assert!(g.check_invariants().is_empty());
    }

    #[test]
    fn removing_a_cyclic_edge_skips_the_rescan() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, a).unwrap();
        let before = g.vertices().to_vec();

        let report = g.remove_edge(b, a).unwrap();
        assert!(report.is_empty());
        assert_eq!(g.vertices(), &before[..]);
        assert_eq!(g.edge_class(a, b), Some(EdgeClass::Acyclic));
    }

    #[test]
    fn remove_edge_unknown() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        assert_eq!(
            g.remove_edge(a, b),
            Err(GraphError::UnknownEdge(Edge::new(a, b)))
        );
    }

    #[test]
    fn remove_isolated_vertex() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let report = g.remove_vertex(a).unwrap();
        assert!(report.is_empty());
        assert_eq!(g.vertex_count(), 0);
    }

    #[test]
    fn remove_vertex_drops_incident_edges() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let v = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, v).unwrap();
        g.add_edge(v, b).unwrap();
        let report = g.remove_vertex(v).unwrap();
        assert!(report.is_empty());
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertices(), &[a, b]);
        assert!(g.check_invariants().is_empty());
    }

    #[test]
    fn remove_vertex_in_two_cycle() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, a).unwrap();
        let report = g.remove_vertex(a).unwrap();
        assert!(report.is_empty());
        assert_eq!(g.vertices(), &[b]);
        assert_eq!(g.edge_count(), 0);
        assert!(!g.has_cycles());
        assert!(g.check_invariants().is_empty());
    }

    #[test]
    fn remove_vertex_with_self_loop() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        g.add_edge(a, a).unwrap();
        let report = g.remove_vertex(a).unwrap();
        assert!(report.is_empty());
        assert!(!g.has_cycles());
        assert_eq!(g.vertex_count(), 0);
    }

    #[test]
    fn ordering_of_empty_graph() {
        let g = DynamicGraph::new();
        assert_eq!(g.topological_ordering().unwrap(), Vec::<VertexId>::new());
    }

    #[test]
    fn ordering_reports_cyclic_count() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        assert_eq!(g.topological_ordering().unwrap(), vec![a, b]);

        g.add_edge(b, a).unwrap();
        assert_eq!(
            g.topological_ordering(),
            Err(CyclicError { cyclic_edges: 1 })
        );
    }

    #[test]
    fn reachability_ignores_cyclic_edges() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        let c = g.add_vertex();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, c).unwrap();
        assert!(g.is_reachable_acyclic(a, c).unwrap());
        assert!(!g.is_reachable_acyclic(c, a).unwrap());

        let mut h = DynamicGraph::new();
        let p = h.add_vertex();
        let q = h.add_vertex();
        h.add_edge(p, q).unwrap();
        h.add_edge(q, p).unwrap(); // cyclic
        assert!(h.has_cycles());
        assert!(!h.is_reachable_acyclic(q, p).unwrap());
    }

    #[test]
    fn invariants_flag_planted_inverted_edge() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex(); // order [a,b]
        g.store_mut().force_insert_acyclic(Edge::new(b, a));

        let violations = g.check_invariants();
        assert!(violations
            .iter()
            .any(|v| v.invariant() == "order-validity"
                && matches!(v, Violation::OrderInverted { edge } if *edge == Edge::new(b, a))));
    }

    #[test]
    fn invariants_flag_planted_unreachable_cyclic_edge() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.store_mut().force_push_cyclic(Edge::new(a, b));

        let violations = g.check_invariants();
        assert!(violations
            .iter()
            .any(|v| v.invariant() == "cyclic-soundness"));
        // The planted edge also breaks the cycle criterion: it is flagged
        // cyclic but closes no cycle.
        assert!(violations
            .iter()
            .any(|v| v.invariant() == "cycle-criterion"));
    }

    #[test]
    fn invariants_flag_broken_bijection() {
        let mut g = DynamicGraph::new();
        g.add_vertex();
        g.add_vertex();
        g.rep_mut().corrupt_swap_slots(0, 1);
        let violations = g.check_invariants();
        assert!(violations.iter().any(|v| v.invariant() == "bijection"));
    }

    #[test]
    fn promotions_cascade_within_one_pass() {
        // Two chained cycles sharing the removed edge: a->b with (b,a)
        // cyclic, and a->c with (c,a) cyclic. Removing a->b promotes (b,a)
        // only; removing a->c afterwards promotes (c,a).
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        let c = g.add_vertex();
        g.add_edge(a, b).unwrap();
        g.add_edge(a, c).unwrap();
        g.add_edge(b, a).unwrap();
        g.add_edge(c, a).unwrap();
        assert_eq!(g.cyclic_edge_count(), 2);

        let first = g.remove_edge(a, b).unwrap();
        assert_eq!(first.promoted, vec![Edge::new(b, a)]);
        assert_eq!(g.cyclic_edge_count(), 1);
        assert!(g.check_invariants().is_empty());

        let second = g.remove_edge(a, c).unwrap();
        assert_eq!(second.promoted, vec![Edge::new(c, a)]);
        assert!(!g.has_cycles());
        assert!(g.check_invariants().is_empty());
    }

    #[test]
    fn rescan_is_idempotent() {
        let mut g = DynamicGraph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        let c = g.add_vertex();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, c).unwrap();
        g.add_edge(c, a).unwrap();
        g.remove_edge(a, b).unwrap();
        assert!(g.rescan_cyclic_edges().is_empty());
    }
}
