//! Graphviz output. Nodes in id order, then edges in canonical order.

use std::fmt::Write;

use crate::constructions::{Role, RoleLabels};
use crate::graph::Graph;

pub fn emit_dot(g: &Graph, labels: Option<&RoleLabels>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        match labels.map(|l| l.role(v)) {
            Some(role) => {
                let index = match role {
                    Role::Core { index }
                    | Role::PendantAnchor { index }
                    | Role::PendantBody { index } => format!(", block={index}"),
                    _ => String::new(),
                };
                writeln!(out, "  {v} [role=\"{}\"{index}];", role.name()).unwrap();
            }
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for e in g.edges() {
        writeln!(out, "  {} -- {};", e.lo(), e.hi()).unwrap();
    }
    out.push_str("}\n");
    out
}
