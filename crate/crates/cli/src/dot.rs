//! Graphviz DOT rendering of a decomposed (and optionally colored) graph.

use spiralcolor::coloring::Color;
use spiralcolor::graph::PlanarGraph;
use spiralcolor::spiral::SpiralDecomposition;

/// Renders `g` as an undirected DOT graph. Every node is labeled with its
/// vertex id and its chain (`S1` is the outermost chain). When `colors` is
/// given, nodes are filled with the assigned color's name; otherwise the
/// export is outline-only.
///
/// Output is deterministic: nodes ascend by id, edges ascend by (min, max).
pub fn to_dot(g: &PlanarGraph, d: &SpiralDecomposition, colors: Option<&[Color]>) -> String {
    let n = g.n();
    let mut chain_of = vec![0usize; n];
    for chain in &d.chains {
        for &v in &chain.vertices {
            chain_of[v] = chain.index;
        }
    }

    let mut out = String::new();
    out.push_str("graph spiral {\n");
    if colors.is_some() {
        out.push_str("  node [shape=circle, style=filled];\n");
    } else {
        out.push_str("  node [shape=circle];\n");
    }
    for v in 0..n {
        match colors {
            Some(cs) => out.push_str(&format!(
                "  {v} [label=\"{v}\\nS{k}\", fillcolor={c}];\n",
                k = chain_of[v],
                c = cs[v].name()
            )),
            None => out.push_str(&format!("  {v} [label=\"{v}\\nS{k}\"];\n", k = chain_of[v])),
        }
    }
    for u in 0..n {
        for &v in g.neighbors(u) {
            if u < v {
                out.push_str(&format!("  {u} -- {v};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spiralcolor::coloring::{color, ColoringOutcome};
    use spiralcolor::generators::gadget_hexagon_triangles;
    use spiralcolor::spiral::{decompose, default_start, Orientation};

    #[test]
    fn colored_gadget_has_six_red_fills() {
        let inst = gadget_hexagon_triangles();
        let g = &inst.graph;
        let d = decompose(g, default_start(g), Orientation::Clockwise).unwrap();
        let outcome = color(g, &d).unwrap();
        let colors = match outcome {
            ColoringOutcome::Success { colors, .. } => colors,
            ColoringOutcome::Failure { .. } => panic!("gadget must color"),
        };
        let dot = to_dot(g, &d, Some(&colors));
        assert_eq!(dot.matches("fillcolor=red").count(), 6);
        assert_eq!(dot.matches("fillcolor=green").count(), 3);
        assert_eq!(dot.matches("fillcolor=yellow").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), g.edge_count());
        assert!(dot.contains("\"0\\nS1\""), "start vertex labeled with chain 1");
    }

    #[test]
    fn uncolored_export_has_chain_labels_and_no_fills() {
        let inst = gadget_hexagon_triangles();
        let g = &inst.graph;
        let d = decompose(g, default_start(g), Orientation::Clockwise).unwrap();
        let dot = to_dot(g, &d, None);
        assert!(!dot.contains("fillcolor"));
        assert!(!dot.contains("style=filled"));
        for k in 1..=6 {
            assert!(dot.contains(&format!("S{k}")), "chain {k} labeled");
        }
    }
}
