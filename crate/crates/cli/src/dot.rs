//! DOT export of a replayed graph.

use std::borrow::Cow;
use std::collections::HashMap;

use dyntopo::{DynamicGraph, VertexId};

/// Renders the graph as a DOT digraph: vertices in representation order,
/// acyclic edges plain, cyclic edges dashed. Output is deterministic for a
/// given graph.
pub fn export_dot(graph: &DynamicGraph, names: &HashMap<VertexId, String>) -> String {
    let label = |id: VertexId| -> Cow<'_, str> {
        match names.get(&id) {
            Some(name) => dot_id(name),
            None => Cow::Owned(format!("v{}", id.raw())),
        }
    };

    let mut out = String::from("digraph g {\n");
    for &v in graph.vertices() {
        out.push_str("    ");
        out.push_str(&label(v));
        out.push_str(";\n");
    }
    for e in graph.acyclic_edges() {
        out.push_str("    ");
        out.push_str(&label(e.source));
        out.push_str(" -> ");
        out.push_str(&label(e.target));
        out.push_str(";\n");
    }
    for &e in graph.cyclic_edges() {
        out.push_str("    ");
        out.push_str(&label(e.source));
        out.push_str(" -> ");
        out.push_str(&label(e.target));
        out.push_str(" [style=dashed];\n");
    }
    out.push_str("}\n");
    out
}

/// Quotes a name unless it is a bare DOT identifier.
fn dot_id(name: &str) -> Cow<'_, str> {
    let mut chars = name.chars();
    let bare = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if bare {
        Cow::Borrowed(name)
    } else {
        Cow::Owned(format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\"")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{execute_session, parse_trace};

    fn dot_of(trace: &str) -> String {
        let ops = parse_trace(trace).unwrap();
        let session = execute_session(&ops).unwrap();
        export_dot(session.graph(), session.names())
    }

    #[test]
    fn empty_graph_is_an_empty_digraph() {
        assert_eq!(dot_of(""), "digraph g {\n}\n");
    }

    #[test]
    fn acyclic_edge_is_plain() {
        let dot = dot_of("node a\nnode b\nedge a b\n");
        assert!(dot.contains("a -> b;"));
        assert!(!dot.contains("style=dashed"));
    }

    #[test]
    fn cyclic_edge_is_dashed() {
        let dot = dot_of("node a\nnode b\nedge a b\nedge b a\n");
        assert!(dot.contains("b -> a [style=dashed];"));
    }

    #[test]
    fn vertices_come_out_in_representation_order() {
        // Adding x->y reorders to [x,m,y]; the node lines must follow suit.
        let dot = dot_of("node y\nnode m\nnode x\nedge x y\n");
        let lines: Vec<&str> = dot.lines().collect();
        assert_eq!(lines[1], "    x;");
        assert_eq!(lines[2], "    m;");
        assert_eq!(lines[3], "    y;");
    }

    #[test]
    fn odd_names_are_quoted() {
        let dot = dot_of("node a-1\nnode 2b\nedge a-1 2b\n");
        assert!(dot.contains("\"a-1\" -> \"2b\";"));
    }
}
