//! Graphviz DOT output for Whitehead graphs and diagrams.

use std::fmt::Write;

use crate::diagram::{CrossingTable, Diagram};
use crate::surface::vertex_label;
use crate::whitehead_graph::WhiteheadGraph;

/// Undirected graph on `X+`/`X-` with one weighted edge per adjacency class.
pub fn whitehead_dot(g: &WhiteheadGraph, names: &[String]) -> String {
    let mut out = String::from("graph whitehead {\n");
    for v in g.vertices() {
        writeln!(out, "  \"{}\";", vertex_label(names, v)).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  \"{}\" -- \"{}\" [weight={w}, label=\"{w}\"];",
            vertex_label(names, e.a),
            vertex_label(names, e.b),
            w = e.weight
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One edge per arc, labelled by its end crossings; each vertex lists its
/// crossings in rotation order.
pub fn diagram_dot(d: &Diagram) -> String {
    let names = d.presentation().generator_names();
    let table = d.table();
    let label = |h: usize| d.crossings()[CrossingTable::half_edge_crossing(h)].label();
    let mut out = String::from("graph diagram {\n");
    for v in table.used_vertices() {
        let rotation: Vec<String> = d.rotation_at(v).into_iter().map(label).collect();
        writeln!(
            out,
            "  \"{}\" [rotation=\"{}\"];",
            vertex_label(names, v),
            rotation.join(" ")
        )
        .unwrap();
    }
    for arc in d.arcs() {
        writeln!(
            out,
            "  \"{}\" -- \"{}\" [label=\"{}-{}\"];",
            vertex_label(names, arc.tail),
            vertex_label(names, arc.head),
            d.crossings()[arc.from_crossing].label(),
            d.crossings()[arc.to_crossing].label()
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
