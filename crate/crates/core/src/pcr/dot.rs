use std::fmt::Write;

use super::WeightedTree;
use crate::rational;

/// Graphviz rendering: leaves as boxes, inner vertices as points, every edge
/// labeled with its weight.
pub fn to_dot(t: &WeightedTree) -> String {
    let mut out = String::from("graph pct {\n");
    for v in 0..t.len() {
        let shape = if t.is_leaf(v) { "box" } else { "point" };
        writeln!(out, "  {:?} [shape={shape}];", t.label(v)).unwrap();
    }
    for e in t.edges() {
        writeln!(
            out,
            "  {:?} -- {:?} [label={:?}];",
            t.label(e.a),
            t.label(e.b),
            rational::format(&e.weight)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
