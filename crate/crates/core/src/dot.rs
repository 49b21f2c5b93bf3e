//! Graphviz export of the system graph.

use std::fmt::Write as _;

use crate::representation::system_graph_unchecked;
use crate::system::TokenSystem;

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph: states in declaration order, one edge per
/// adjacent pair labelled with its reverse-pair class.
pub fn to_dot(system: &TokenSystem) -> String {
    let graph = system_graph_unchecked(system);
    let mut out = String::from("graph system {\n");
    for s in system.states() {
        let _ = writeln!(out, "  {};", quote(system.state_name(s)));
    }
    for &(a, b, class) in graph.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(system.state_name(a)),
            quote(system.state_name(b)),
            quote(&graph.labels()[class])
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::tests::cub4;

    #[test]
    fn cub4_dot() {
        assert_eq!(
            to_dot(&cub4()),
            "graph system {\n  \"S\";\n  \"T\";\n  \"P\";\n  \"Q\";\n  \"S\" -- \"T\" [label=\"j:tau\"];\n  \"T\" -- \"Q\" [label=\"j:mu\"];\n  \"P\" -- \"Q\" [label=\"j:tau\"];\n}\n"
        );
    }
}
