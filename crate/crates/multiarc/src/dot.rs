//! Graphviz output. Vertex labels join arc labels with `|`.

use std::fmt::Write;

use multiarc_core::MultiarcGraph;

pub fn to_dot(g: &MultiarcGraph) -> String {
    let mut out = String::from("graph multiarcs {\n");
    for (i, v) in g.vertices().iter().enumerate() {
        writeln!(out, "  {i} [label=\"{v}\"];").unwrap();
    }
    for (i, j) in g.edges() {
        writeln!(out, "  {i} -- {j};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use multiarc_core::{GraphMode, Surface};

    #[test]
    fn pentagon_dot() {
        let g = MultiarcGraph::build(&Surface::polygon(5).unwrap(), 2, GraphMode::Complete).unwrap();
        let d = to_dot(&g);
        assert!(d.contains("label=\"0-2|0-3\""));
        assert_eq!(d.matches(" -- ").count(), 5);
    }

    #[test]
    fn normal_labels_are_tuples() {
        let s = Surface::triangulated(multiarc_core::SurfaceSpec::new(1, vec![], 1).unwrap()).unwrap();
        let c = s.reference_triangulation().arcs().clone();
        let g = MultiarcGraph::build(&s, 1, GraphMode::Ball { center: c.without(&c.arcs()[1]).without(&c.arcs()[2]), radius: 1, arc_bound: 2 }).unwrap();
        assert!(to_dot(&g).contains("label=\"(-1,0,0)\""));
    }
}
