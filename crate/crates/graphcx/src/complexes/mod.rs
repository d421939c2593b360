//! Differentials and brackets of the graph complexes: fGC, the twisted
//! complexes `TwGra`, `TwGer`, and the convolution complexes.

pub mod conv;
pub mod fgc;
pub mod orbit;
pub mod tw;

pub use conv::{conv_bracket, conv_bullet, conv_diff, conv_mc, conv_to_bivec, connected_part, iota_star, mc_residual, ConvElem, ConvKind, Left};
pub use fgc::{bivec_to_fgc, diff_connected_term, fgc_bracket, fgc_diff, fgc_diff_connected, fgc_diff_prop, fgc_mc, fgc_to_bivec, graph_to_bigraph};
pub use orbit::{conv_mus, edge_bigraph, fgc_mus, mc_vector, orbit_bracket, orbit_bullet, orbit_diff, orbit_diff_term};
pub use tw::{tw_diff_ger, tw_diff_gra, tw_diff_gra_literal, tw_iota, TwGerVec};

use crate::gra::{FgcVec, GraVec};
use crate::graphs::{connected_components, is_connected, LabeledGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("profile mismatch: {0}")]
    Profile(String),
    #[error("malformed element: {0}")]
    Parse(String),
}

/// Named subcomplexes, tested termwise on graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcomplex {
    /// Path graphs.
    Cables,
    /// Cycle graphs, including the loop.
    Polygons,
    /// Every vertex has valence at least three.
    Gc,
    /// No loops.
    NoLoop,
    /// Some vertex has valence at least three.
    FgcAtLeast3,
    /// No connected component made only of neutral vertices.
    FGraphs,
    /// Every neutral vertex has valence at least three.
    Graphs,
}

fn is_path(g: &LabeledGraph) -> bool {
    let nv = g.num_vertices();
    is_connected(g) && !g.has_loops() && g.num_edges() + 1 == nv && g.valences().iter().all(|&v| v <= 2)
}

fn is_cycle(g: &LabeledGraph) -> bool {
    is_connected(g) && g.num_edges() == g.num_vertices() && g.valences().iter().all(|&v| v == 2)
}

/// Whether a single graph belongs to the subcomplex.
pub fn graph_in(g: &LabeledGraph, which: Subcomplex) -> bool {
    let r = g.r_neutral();
    match which {
        Subcomplex::Cables => is_path(g),
        Subcomplex::Polygons => is_cycle(g),
        Subcomplex::Gc => g.valences().iter().all(|&v| v >= 3),
        Subcomplex::NoLoop => !g.has_loops(),
        Subcomplex::FgcAtLeast3 => g.valences().iter().any(|&v| v >= 3),
        Subcomplex::FGraphs => connected_components(g).iter().all(|c| c.iter().any(|&v| v > r)),
        Subcomplex::Graphs => g.valences()[..r].iter().all(|&v| v >= 3),
    }
}

/// Whether every term of an fGC element lies in the subcomplex.
pub fn subcomplex_test(x: &FgcVec, which: Subcomplex) -> bool {
    x.terms().keys().all(|g| graph_in(g, which))
}

/// As [`subcomplex_test`] for twisted elements.
pub fn subcomplex_test_tw(x: &GraVec, which: Subcomplex) -> bool {
    x.terms().keys().all(|g| graph_in(g, which))
}

/// The terms of an fGC element that are connected graphs.
pub fn fgc_connected_part(x: &FgcVec) -> FgcVec {
    let mut out = FgcVec::zero(x.degree());
    for (k, c) in x.terms() {
        if is_connected(k) {
            out.add_canonical(k.clone(), c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gra::av;
    use crate::graphs::{cable, polygon};

    #[test]
    fn subcomplex_membership() {
        let p5 = av(&polygon(5));
        assert!(subcomplex_test(&p5, Subcomplex::Polygons));
        assert!(!subcomplex_test(&p5, Subcomplex::Gc));
        assert!(subcomplex_test(&av(&cable(5)), Subcomplex::Cables));
        let k4 = av(&crate::graphs::complete(4));
        assert!(subcomplex_test(&k4, Subcomplex::Gc));
        assert!(subcomplex_test(&k4, Subcomplex::NoLoop));
        assert!(subcomplex_test(&k4, Subcomplex::FgcAtLeast3));
    }

    #[test]
    fn fgraphs_and_graphs() {
        let g = LabeledGraph::new(1, 1, vec![(1, 2)]).unwrap();
        assert!(graph_in(&g, Subcomplex::FGraphs));
        assert!(!graph_in(&g, Subcomplex::Graphs));
        let h = LabeledGraph::new(2, 1, vec![(1, 2)]).unwrap();
        assert!(!graph_in(&h, Subcomplex::FGraphs));
    }
}
