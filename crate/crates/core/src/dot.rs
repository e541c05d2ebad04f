//! Graphviz rendering of proof nets.

use std::fmt::Write;

use crate::net::LeafFunction;
use crate::syntax::{Connective, CutSequent, Symbol, VertexKind};

fn symbol_label(s: Symbol, name: &str) -> String {
    match s {
        Symbol::Var(_) => name.to_string(),
        Symbol::Dual(_) => format!("{name}⊥"),
        Symbol::One => "1".to_string(),
        Symbol::Bot => "⊥".to_string(),
    }
}

/// Formula trees drawn root up with solid parse edges, leaf edges as curved
/// arrows from negative to positive leaves, and cut pairs joined by a dashed edge.
pub fn render_dot(g: &CutSequent, f: &LeafFunction) -> String {
    let forest = g.forest();
    let leaves = g.leaves();
    let mut out = String::from("digraph net {\n  rankdir=BT;\n  splines=curved;\n  node [shape=plaintext];\n");
    for (id, v) in forest.vertices.iter().enumerate() {
        let label = match v.kind {
            VertexKind::Leaf(l) => {
                let name = leaves[l].1.var().unwrap_or("");
                format!("{} ({l})", symbol_label(forest.leaves[l].symbol, name))
            }
            VertexKind::Binary(Connective::Tensor) => "⊗".to_string(),
            VertexKind::Binary(Connective::Par) => "⅋".to_string(),
        };
        writeln!(out, "  v{id} [label=\"{label}\"];").expect("write to string");
    }
    for (id, v) in forest.vertices.iter().enumerate() {
        if let Some((a, b)) = v.children {
            writeln!(out, "  v{a} -> v{id} [arrowhead=none];\n  v{b} -> v{id} [arrowhead=none];").expect("write to string");
        }
    }
    for (s, t) in f.edges() {
        let (u, w) = (forest.leaves[s].vertex, forest.leaves[t].vertex);
        writeln!(out, "  v{u} -> v{w} [constraint=false, color=blue];").expect("write to string");
    }
    for &(i, j) in g.cuts() {
        writeln!(out, "  v{} -> v{} [style=dashed, arrowhead=none, label=\"cut\"];", forest.roots[i], forest.roots[j])
            .expect("write to string");
    }
    out.push_str("}\n");
    out
}
