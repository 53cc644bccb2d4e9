//! Trace parsing and replay.
//!
//! A trace is a line-oriented script: one operation per line, `#` comments
//! and blank lines skipped. Vertices are named by whitespace-free tokens;
//! each name binds to exactly one vertex for the whole session.
//!
//! ```text
//! node a          # create a vertex (silent)
//! delnode a       # remove it and everything incident (prints promotions)
//! edge a b        # add a -> b  (prints `edge a b acyclic|cyclic`)
//! deledge a b     # remove a -> b (prints `promoted s t` per promotion)
//! order           # prints `order v1 v2 ...` or `cyclic k`
//! reach a b       # prints `reach a b true|false`
//! check           # prints `check ok` or `check FAIL <invariant>`
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use dyntopo::{DynamicGraph, VertexId};

/// One parsed trace line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceOp {
    pub line: usize,
    pub kind: OpKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpKind {
    Node(String),
    DelNode(String),
    Edge(String, String),
    DelEdge(String, String),
    Order,
    Reach(String, String),
    Check,
}

impl OpKind {
    /// Whether the op changes the graph (as opposed to querying it).
    pub fn is_mutation(&self) -> bool {
        matches!(
            self,
            OpKind::Node(_) | OpKind::DelNode(_) | OpKind::Edge(..) | OpKind::DelEdge(..)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct SemanticError {
    pub line: usize,
    pub reason: String,
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceOp>, ParseError> {
    let mut ops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let arity = tokens.len() - 1;
        let expect = |want: usize| -> Result<(), ParseError> {
            if arity == want {
                Ok(())
            } else {
                Err(ParseError {
                    line,
                    reason: format!(
                        "`{}` takes {} argument(s), found {}",
                        tokens[0], want, arity
                    ),
                })
            }
        };
        let kind = match tokens[0] {
            "node" => {
                expect(1)?;
                OpKind::Node(tokens[1].to_string())
            }
            "delnode" => {
                expect(1)?;
                OpKind::DelNode(tokens[1].to_string())
            }
            "edge" => {
                expect(2)?;
                OpKind::Edge(tokens[1].to_string(), tokens[2].to_string())
            }
            "deledge" => {
                expect(2)?;
                OpKind::DelEdge(tokens[1].to_string(), tokens[2].to_string())
            }
            "order" => {
                expect(0)?;
                OpKind::Order
            }
            "reach" => {
                expect(2)?;
                OpKind::Reach(tokens[1].to_string(), tokens[2].to_string())
            }
            "check" => {
                expect(0)?;
                OpKind::Check
            }
            other => {
                return Err(ParseError {
                    line,
                    reason: format!("unknown keyword `{other}`"),
                })
            }
        };
        ops.push(TraceOp { line, kind });
    }
    Ok(ops)
}

/// Replays ops against one graph, accumulating the printable output.
#[derive(Debug, Default)]
pub struct ReplaySession {
    graph: DynamicGraph,
    id_of: HashMap<String, VertexId>,
    name_of: HashMap<VertexId, String>,
    output: String,
    failed_checks: usize,
}

impl ReplaySession {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn names(&self) -> &HashMap<VertexId, String> {
        &self.name_of
    }

    pub fn output(&self) -> &str {
        &self.output
    }

    pub fn failed_checks(&self) -> usize {
        self.failed_checks
    }

    fn resolve(&self, name: &str, line: usize) -> Result<VertexId, SemanticError> {
        match self.id_of.get(name) {
            Some(&id) if self.graph.contains_vertex(id) => Ok(id),
            _ => Err(SemanticError {
                line,
                reason: format!("unknown node `{name}`"),
            }),
        }
    }

    fn print_promotions(&mut self, promoted: &[dyntopo::Edge]) {
        for e in promoted {
            let s = &self.name_of[&e.source];
            let t = &self.name_of[&e.target];
            let mut line = String::new();
            write!(line, "promoted {s} {t}").unwrap();
            self.output.push_str(&line);
            self.output.push('\n');
        }
    }

    pub fn apply(&mut self, op: &TraceOp) -> Result<(), SemanticError> {
        let line = op.line;
        match &op.kind {
            OpKind::Node(name) => {
                if self.id_of.contains_key(name) {
                    return Err(SemanticError {
                        line,
                        reason: format!("duplicate node `{name}`"),
                    });
                }
                let id = self.graph.add_vertex();
                self.id_of.insert(name.clone(), id);
                self.name_of.insert(id, name.clone());
            }
            OpKind::DelNode(name) => {
                let id = self.resolve(name, line)?;
                let report = self.graph.remove_vertex(id).expect("resolved to live");
                self.print_promotions(&report.promoted);
            }
            OpKind::Edge(u, v) => {
                let a = self.resolve(u, line)?;
                let b = self.resolve(v, line)?;
                let class = self.graph.add_edge(a, b).expect("resolved to live");
                writeln!(self.output, "edge {u} {v} {class}").unwrap();
            }
            OpKind::DelEdge(u, v) => {
                let a = self.resolve(u, line)?;
                let b = self.resolve(v, line)?;
                let report = self.graph.remove_edge(a, b).map_err(|_| SemanticError {
                    line,
                    reason: format!("unknown edge `{u} {v}`"),
                })?;
                self.print_promotions(&report.promoted);
            }
            OpKind::Order => match self.graph.topological_ordering() {
                Ok(order) => {
                    self.output.push_str("order");
                    for id in order {
                        self.output.push(' ');
                        self.output.push_str(&self.name_of[&id]);
                    }
                    self.output.push('\n');
                }
                Err(err) => {
                    writeln!(self.output, "cyclic {}", err.cyclic_edges).unwrap();
                }
            },
            OpKind::Reach(u, v) => {
                let a = self.resolve(u, line)?;
                let b = self.resolve(v, line)?;
                let reachable = self.graph.is_reachable_acyclic(a, b).expect("live");
                writeln!(self.output, "reach {u} {v} {reachable}").unwrap();
            }
            OpKind::Check => {
                let violations = self.graph.check_invariants();
                match violations.first() {
                    None => self.output.push_str("check ok\n"),
                    Some(first) => {
                        self.failed_checks += 1;
                        writeln!(self.output, "check FAIL {}", first.invariant()).unwrap();
                    }
                }
            }
        }
        Ok(())
    }
}

/// Replays a whole trace, halting at the first semantic error.
pub fn execute_session(ops: &[TraceOp]) -> Result<ReplaySession, SemanticError> {
    let mut session = ReplaySession::new();
    for op in ops {
        session.apply(op)?;
    }
    Ok(session)
}

/// Replays a whole trace and returns its output.
pub fn execute_trace(ops: &[TraceOp]) -> Result<String, SemanticError> {
    execute_session(ops).map(|session| session.output)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_one_op_per_line() {
        let ops = parse_trace("node a\nnode b\nedge a b\norder\n").unwrap();
        let kinds: Vec<OpKind> = ops.into_iter().map(|op| op.kind).collect();
        assert_eq!(
            kinds,
            vec![
                OpKind::Node("a".into()),
                OpKind::Node("b".into()),
                OpKind::Edge("a".into(), "b".into()),
                OpKind::Order,
            ]
        );
    }

    #[test]
    fn skips_comments_and_blanks() {
        let ops = parse_trace("# comment\n\nedge a b").unwrap();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].line, 3);
        assert_eq!(ops[0].kind, OpKind::Edge("a".into(), "b".into()));
    }

    #[test]
    fn rejects_unknown_keyword_with_line_number() {
        let err = parse_trace("frobnicate x").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.reason.contains("frobnicate"));
    }

    #[test]
    fn rejects_wrong_arity() {
        let err = parse_trace("node\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_trace("edge a\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_trace("order x\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn duplicate_node_is_semantic_error() {
        let ops = parse_trace("node a\nnode a\n").unwrap();
        let err = execute_trace(&ops).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.reason.contains("duplicate"));
    }

    #[test]
    fn unknown_name_is_semantic_error() {
        let ops = parse_trace("node a\nedge a b\n").unwrap();
        let err = execute_trace(&ops).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.reason.contains("unknown node"));
    }

    #[test]
    fn deleted_name_stays_retired() {
        let ops = parse_trace("node a\ndelnode a\nnode a\n").unwrap();
        let err = execute_trace(&ops).unwrap_err();
        assert_eq!(err.line, 3);

        let ops = parse_trace("node a\nnode b\ndelnode a\nedge a b\n").unwrap();
        let err = execute_trace(&ops).unwrap_err();
        assert_eq!(err.line, 4);
    }

    #[test]
    fn unknown_edge_is_semantic_error() {
        let ops = parse_trace("node a\nnode b\ndeledge a b\n").unwrap();
        let err = execute_trace(&ops).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.reason.contains("unknown edge"));
    }

    #[test]
    fn check_reports_ok_and_counts_failures() {
        let ops = parse_trace("node a\ncheck\n").unwrap();
        let mut session = ReplaySession::new();
        for op in &ops {
            session.apply(op).unwrap();
        }
        assert_eq!(session.output(), "check ok\n");
        assert_eq!(session.failed_checks(), 0);
    }
}
