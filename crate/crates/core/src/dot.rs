//! Graphviz export of vertex-facet graphs.

use std::fmt::Write;

use crate::lattice::IncidenceMatrix;
use crate::matching::{MatchingCertificate, Side, VertexFacetGraph};

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Renders the graph with vertices in one rank and facets in another.
///
/// Matched edges are bold; witness members are red and their neighbors blue.
pub fn export_dot(
    g: &VertexFacetGraph,
    m: &IncidenceMatrix,
    certificate: Option<&MatchingCertificate>,
) -> String {
    let matched: Vec<(usize, usize)> = certificate.map(|c| c.matching.clone()).unwrap_or_default();
    let witness = certificate.and_then(|c| c.hall_witness.as_ref());
    let role = |side: Side, i: usize| -> &'static str {
        match witness {
            Some(w) if w.side == side && w.members.binary_search(&i).is_ok() => {
                ", color=red, xlabel=\"S\""
            }
            Some(w) if w.side != side && w.neighborhood.binary_search(&i).is_ok() => {
                ", color=blue, xlabel=\"N(S)\""
            }
            _ => "",
        }
    };

    let mut out = String::new();
    writeln!(out, "graph vertex_facet {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  subgraph vertices {{").unwrap();
    writeln!(out, "    rank=same;").unwrap();
    writeln!(out, "    node [shape=circle];").unwrap();
    for (v, label) in m.vertex_labels().iter().enumerate() {
        writeln!(out, "    v{v} [label={}{}];", quote(label), role(Side::Vertices, v)).unwrap();
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "  subgraph facets {{").unwrap();
    writeln!(out, "    rank=same;").unwrap();
    writeln!(out, "    node [shape=box];").unwrap();
    for (f, label) in m.facet_labels().iter().enumerate() {
        writeln!(out, "    f{f} [label={}{}];", quote(label), role(Side::Facets, f)).unwrap();
    }
    writeln!(out, "  }}").unwrap();
    for (v, f) in g.edges() {
        if matched.binary_search(&(v, f)).is_ok() {
            writeln!(out, "  v{v} -- f{f} [style=bold];").unwrap();
        } else {
            writeln!(out, "  v{v} -- f{f};").unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
