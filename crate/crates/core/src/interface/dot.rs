//! Graphviz export.
//!
//! Frozen vertices are drawn as boxes. When the quiver has frozen vertices,
//! mutable vertices are filled by status: green `#2ecc71`, red `#e74c3c`,
//! mixed `#f39c12`; a vertex with no frozen neighbours is left unfilled.

use std::fmt::Write;

use crate::quiver::Quiver;

pub const GREEN: &str = "#2ecc71";
pub const RED: &str = "#e74c3c";
pub const MIXED: &str = "#f39c12";

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(q: &Quiver) -> String {
    let framed = q.has_frozen();
    let mut out = String::from("digraph quiver {\n");
    for v in q.vertices() {
        let mut attrs = Vec::new();
        if q.is_frozen(v).unwrap_or(false) {
            attrs.push("shape=box".to_owned());
        } else if framed {
            let st = q.status(v).expect("mutable vertex");
            let fill = match (st.green, st.red) {
                (true, false) => Some(GREEN),
                (false, true) => Some(RED),
                (false, false) => Some(MIXED),
                (true, true) => None,
            };
            if let Some(c) = fill {
                attrs.push("style=filled".to_owned());
                attrs.push(format!("fillcolor={}", quote(c)));
            }
        }
        if attrs.is_empty() {
            writeln!(out, "  {};", quote(v.as_str())).unwrap();
        } else {
            writeln!(out, "  {} [{}];", quote(v.as_str()), attrs.join(", ")).unwrap();
        }
    }
    for (a, b, w) in q.arrows() {
        if w == 1 {
            writeln!(out, "  {} -> {};", quote(a.as_str()), quote(b.as_str())).unwrap();
        } else {
            writeln!(out, "  {} -> {} [label=\"{w}\"];", quote(a.as_str()), quote(b.as_str())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
