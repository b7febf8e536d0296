use std::fmt::Write;

use super::{node_name, ColimitDiagram};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz digraph with one node per poset element and one edge per cover.
pub fn emit_dot(diagram: &ColimitDiagram) -> String {
    let mut out = String::new();
    out.push_str("digraph colimit {\n");
    out.push_str("  rankdir=LR;\n  node [shape=box];\n");
    for n in &diagram.nodes {
        writeln!(
            out,
            "  {} [label={}];",
            quote(&n.name),
            quote(&n.factors.to_string())
        )
        .unwrap();
    }
    for e in &diagram.edges {
        let target = &diagram
            .node(&e.to)
            .expect("edge endpoints are nodes")
            .factors;
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&node_name(&e.from)),
            quote(&node_name(&e.to)),
            quote(&e.label_text(target))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn emit_json(diagram: &ColimitDiagram) -> String {
    let mut s = serde_json::to_string_pretty(diagram).expect("diagram serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<ColimitDiagram, serde_json::Error> {
    serde_json::from_str(text)
}
