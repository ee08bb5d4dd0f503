//! Graphviz output of Hasse diagrams: one node per element, one edge per cover.

use std::fmt::Write;

use princ_core::order::BoundedOrder;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn hasse_diagram(name: &str, p: &BoundedOrder) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for x in p.elements() {
        writeln!(out, "  {};", quote(p.name(x))).unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(out, "  {} -> {};", quote(p.name(a)), quote(p.name(b))).unwrap();
    }
    out.push_str("}\n");
    out
}
