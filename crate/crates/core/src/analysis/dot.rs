//! Graphviz export of transition graphs and their type projections.
//!
//! Output is byte-stable: nodes are emitted in state order, edges in
//! (source, target) order, and probabilities with a fixed formatter.

use std::fmt::Write;

use super::chain::{ProjectedEdge, TransitionGraph, TypeProjection};

#[derive(Debug, Clone)]
pub struct DotOptions {
    pub name: String,
    /// Label edges with their one-step probability.
    pub show_probabilities: bool,
    /// Omit self-loops (the probability-1 loops of absorbing states included).
    pub hide_self_loops: bool,
    /// Free text written as `//` comment lines at the top.
    pub header: Vec<String>,
}

impl Default for DotOptions {
    fn default() -> Self {
        Self {
            name: "transitions".into(),
            show_probabilities: true,
            hide_self_loops: false,
            header: Vec::new(),
        }
    }
}

/// Attribute marking absorbing (or closed) nodes.
pub const ABSORBING_STYLE: &str = "shape=doublecircle, color=blue, penwidth=2";

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn probability(p: f64) -> String {
    let s = format!("{p:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "0" {
        format!("{p:.3e}")
    } else {
        s.to_string()
    }
}

fn preamble(out: &mut String, options: &DotOptions) {
    for line in &options.header {
        for l in line.lines() {
            let _ = writeln!(out, "// {l}");
        }
    }
    let _ = writeln!(out, "digraph \"{}\" {{", escape(&options.name));
    out.push_str("  rankdir=LR;\n  node [shape=ellipse, fontname=\"Helvetica\"];\n");
}

pub fn export_dot(graph: &TransitionGraph, options: &DotOptions) -> String {
    let mut out = String::new();
    preamble(&mut out, options);
    for (i, state) in graph.states.iter().enumerate() {
        let style = if graph.absorbing[i] {
            format!(", {ABSORBING_STYLE}")
        } else {
            String::new()
        };
        let _ = writeln!(out, "  s{i} [label=\"{}\"{style}];", escape(&state.label()));
    }
    for (i, edges) in graph.edges.iter().enumerate() {
        for e in edges {
            if options.hide_self_loops && e.to == i {
                continue;
            }
            let mut attrs = Vec::new();
            if options.show_probabilities {
                attrs.push(format!("label=\"{}\"", probability(e.probability)));
            }
            if e.drift && !e.strict {
                attrs.push("style=dashed".into());
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            let _ = writeln!(out, "  s{i} -> s{}{attrs};", e.to);
        }
    }
    out.push_str("}\n");
    out
}

fn projected_style(e: &ProjectedEdge) -> &'static str {
    match (e.strict, e.drift) {
        (true, true) => " [label=\"strict+drift\"]",
        (true, false) => " [label=\"strict\"]",
        (false, true) => " [label=\"drift\", style=dashed]",
        (false, false) => "",
    }
}

/// Type-multiset graph; nodes without outgoing edges are drawn as absorbing.
pub fn export_projection_dot(projection: &TypeProjection, options: &DotOptions) -> String {
    let mut out = String::new();
    preamble(&mut out, options);
    for i in 0..projection.nodes.len() {
        let style = if projection.edges[i].is_empty() {
            format!(", {ABSORBING_STYLE}")
        } else {
            String::new()
        };
        let _ = writeln!(out, "  t{i} [label=\"{}\"{style}];", escape(&projection.label(i)));
    }
    for (i, edges) in projection.edges.iter().enumerate() {
        for e in edges {
            let _ = writeln!(out, "  t{i} -> t{}{};", e.to, projected_style(e));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::chain::{build_dyad_chain, build_triad_chain, project_types};
    use crate::dynamics::ModelParams;

    fn count(dot: &str, needle: &str) -> usize {
        dot.lines().filter(|l| l.contains(needle)).count()
    }

    #[test]
    fn dyad_dot_structure() {
        let graph = build_dyad_chain(&ModelParams::default());
        let dot = export_dot(&graph, &DotOptions::default());
        assert!(dot.starts_with("digraph \"transitions\" {"));
        assert_eq!(count(&dot, "[label=\"") - count(&dot, "->"), 12);
        assert_eq!(count(&dot, "doublecircle"), 4);
        assert_eq!(
            dot,
            export_dot(&build_dyad_chain(&ModelParams::default()), &DotOptions::default())
        );
        assert!(dot.contains("label=\"UC+UC\", shape=doublecircle"));
    }

    #[test]
    fn projection_dot_structure() {
        let proj = project_types(&build_triad_chain(&ModelParams::default()));
        let dot = export_projection_dot(
            &proj,
            &DotOptions {
                header: vec!["p_inv = 1".into()],
                ..Default::default()
            },
        );
        assert!(dot.starts_with("// p_inv = 1\n"));
        assert_eq!(count(&dot, "doublecircle"), 3);
        assert_eq!(count(&dot, " -> "), proj.edges.iter().map(Vec::len).sum::<usize>());
    }

    #[test]
    fn probability_format() {
        assert_eq!(probability(1.0), "1");
        assert_eq!(probability(0.5), "0.5");
        assert_eq!(probability(1.0 / 3.0), "0.333333");
        assert_eq!(probability(1e-9), "1.000e-9");
    }
}
