//! The full graph complex fGC: symmetrized graphs with all vertices
//! neutral, the bracket induced by insertion, and the differential twisted
//! by the edge graph.

use rayon::prelude::*;

use super::orbit::{fgc_mus, orbit_bracket, orbit_diff};
use crate::gra::{for_each_insertion, BiGraph, BiVec, FgcVec};
use crate::graphs::{class_info, is_connected, LabeledGraph};
use crate::qlinalg::Rational;

/// The graph as a two-colored graph with solid edges only.
pub fn graph_to_bigraph(g: &LabeledGraph) -> BiGraph {
    BiGraph::new(g.num_vertices(), g.edges().to_vec(), Vec::new()).expect("valid graph")
}

pub fn fgc_to_bivec(x: &FgcVec) -> BiVec {
    let mut out = BiVec::zero(x.degree());
    for (k, c) in x.terms() {
        out.add_orbit(&graph_to_bigraph(k), c);
    }
    out
}

/// Inverse of [`fgc_to_bivec`].  Panics on dashed edges.
pub fn bivec_to_fgc(x: &BiVec) -> FgcVec {
    let mut out = FgcVec::zero(x.degree());
    for (k, c) in x.terms() {
        assert!(k.dashed().is_empty(), "dashed edge in an fGC element");
        let g = LabeledGraph::new(k.num_vertices(), 0, k.solid().iter().map(|&(a, b)| (a as usize, b as usize)).collect())
            .expect("valid graph");
        out.add_orbit(&g, c);
    }
    out
}

/// The MC element `Γ•−•`.
pub fn fgc_mc() -> FgcVec {
    FgcVec::orbit(&LabeledGraph::new(2, 0, vec![(1, 2)]).expect("valid"))
}

/// The Lie bracket of fGC.
pub fn fgc_bracket(x: &FgcVec, y: &FgcVec) -> FgcVec {
    bivec_to_fgc(&orbit_bracket(&fgc_to_bivec(x), &fgc_to_bivec(y)))
}

/// The differential as `[Γ•−•, x]`.
pub fn fgc_diff(x: &FgcVec) -> FgcVec {
    fgc_bracket(&fgc_mc(), x)
}

/// The differential by the closed form
/// `∂Av(Γ) = Av(Γ•−• ∘_1 Γ) - (-1)^e ½ Σ_i Av(Γ ∘_i Γ•−•)`.
pub fn fgc_diff_prop(x: &FgcVec) -> FgcVec {
    bivec_to_fgc(&orbit_diff(&fgc_to_bivec(x), &fgc_mus()))
}

/// The differential of a combination of connected graphs with at least
/// one edge: `-(-1)^e ½ Σ_i Av(Γ'_i)`, where `Γ'_i` is `Γ ∘_i Γ•−•` without
/// the terms in which a vertex of the new edge has valence one.
///
/// Returns `None` if some term is disconnected or edgeless.
pub fn fgc_diff_connected(x: &FgcVec) -> Option<FgcVec> {
    if x.terms().keys().any(|k| k.num_edges() == 0 || !is_connected(k)) {
        return None;
    }
    let terms: Vec<(&LabeledGraph, &Rational)> = x.terms().iter().collect();
    let parts: Vec<FgcVec> = terms.par_iter().map(|&(k, c)| diff_connected_term(k, c, x.degree() + 1)).collect();
    let mut out = FgcVec::zero(x.degree() + 1);
    for p in parts {
        out.add_scaled(&p, &Rational::one());
    }
    Some(out)
}

/// One term of [`fgc_diff_connected`] for a canonical connected graph.
pub fn diff_connected_term(k: &LabeledGraph, c: &Rational, degree: i64) -> FgcVec {
    let mut out = FgcVec::zero(degree);
    let aut = class_info(k).aut;
    let coeff = (c * Rational::new(1, 2 * aut as i64)).signed(k.num_edges() % 2 == 0);
    let nv = k.num_vertices();
    for i in 1..=nv {
        for_each_insertion(k.edges(), i as u8, &[(1, 2)], 2, |edges| {
            let g = LabeledGraph::new(nv + 1, 0, edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect()).expect("valid");
            if g.valence(i) >= 2 && g.valence(i + 1) >= 2 {
                out.add_av(&g, &coeff);
            }
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cable, polygon};

    fn point() -> FgcVec {
        FgcVec::orbit(&LabeledGraph::edgeless(1, 0))
    }

    #[test]
    fn point_maps_to_edge() {
        assert_eq!(fgc_diff(&point()), fgc_mc());
        assert_eq!(fgc_diff_prop(&point()), fgc_mc());
    }

    #[test]
    fn loop_is_closed() {
        let lp = FgcVec::orbit(&LabeledGraph::new(1, 0, vec![(1, 1)]).unwrap());
        assert!(fgc_diff(&lp).is_zero());
    }

    #[test]
    fn mc_equation() {
        assert!(fgc_bracket(&fgc_mc(), &fgc_mc()).is_zero());
    }

    #[test]
    fn cable_five_to_six() {
        let d = fgc_diff(&crate::gra::av(&cable(5)));
        assert_eq!(d, crate::gra::av(&cable(6)));
    }

    #[test]
    fn formulas_agree() {
        let graphs = [cable(3), cable(4), polygon(3), polygon(4), polygon(5), crate::graphs::complete(4)];
        for g in graphs {
            let x = FgcVec::orbit(&g);
            let a = fgc_diff(&x);
            assert_eq!(a, fgc_diff_prop(&x), "{g}");
            assert_eq!(Some(a.clone()), fgc_diff_connected(&x), "{g}");
            assert!(fgc_diff(&a).is_zero(), "{g}");
        }
    }
}
