//! Brackets and differentials on `S_n` orbit sums of two-colored graphs.
//!
//! For graphs `A`, `B` the pre-Lie product of symmetrizations is
//! `Av(A) • Av(B) = Σ_j Av(A ∘_j B)`.  Stored orbit sums are `Av / |Aut|`.

use rayon::prelude::*;

use crate::gra::{bi_class_info, for_each_bi_insertion, BiGraph, BiVec};
use crate::qlinalg::Rational;

fn merge(degree: i64, parts: Vec<BiVec>) -> BiVec {
    let mut out = BiVec::zero(degree);
    for p in parts {
        out.add_scaled(&p, &Rational::one());
    }
    out
}

/// `1 / |Aut(g)|` for a canonical graph.
fn inv_aut(g: &BiGraph) -> Rational {
    Rational::new(1, bi_class_info(g).aut as i64)
}

/// Pre-Lie product `x • y`.
pub fn orbit_bullet(x: &BiVec, y: &BiVec) -> BiVec {
    let degree = x.degree() + y.degree();
    let pairs: Vec<(&BiGraph, &Rational, &BiGraph, &Rational)> =
        x.terms().iter().flat_map(|(a, ca)| y.terms().iter().map(move |(b, cb)| (a, ca, b, cb))).collect();
    let parts: Vec<BiVec> = pairs
        .par_iter()
        .map(|&(a, ca, b, cb)| {
            let mut out = BiVec::zero(degree);
            let c = ca * cb * inv_aut(a) * inv_aut(b);
            for j in 1..=a.num_vertices() {
                for_each_bi_insertion(a, j, b, |s, g| out.add_av(&g, &c.signed(s)));
            }
            out
        })
        .collect();
    merge(degree, parts)
}

/// `[x, y] = x • y - (-1)^{|x||y|} y • x`.
pub fn orbit_bracket(x: &BiVec, y: &BiVec) -> BiVec {
    let mut out = orbit_bullet(x, y);
    let odd = x.degree().rem_euclid(2) == 1 && y.degree().rem_euclid(2) == 1;
    out.add_scaled(&orbit_bullet(y, x), &Rational::sign(!odd));
    out
}

/// The edge graph on two vertices, solid or dashed.
pub fn edge_bigraph(dashed: bool) -> BiGraph {
    if dashed {
        BiGraph::new(2, vec![], vec![(1, 2)]).expect("valid")
    } else {
        BiGraph::new(2, vec![(1, 2)], vec![]).expect("valid")
    }
}

/// The Maurer–Cartan element `Σ_k O(μ_k)` for `S_2`-invariant two-vertex
/// graphs `μ_k`.
pub fn mc_vector(mus: &[BiGraph]) -> BiVec {
    let mut v = BiVec::zero(1);
    for m in mus {
        v.add_orbit(m, &Rational::one());
    }
    v
}

/// `[MC, O(y)]` for one canonical graph `y`, by the short form
/// `Σ_k Av(μ_k ∘_1 y) - (-1)^{|y|} ½ Σ_k Σ_i Av(y ∘_i μ_k)`, divided by
/// `|Aut(y)|`.
fn diff_term(y: &BiGraph, c: &Rational, mus: &[BiGraph], out: &mut BiVec) {
    let scale = c * inv_aut(y);
    for mu in mus {
        for_each_bi_insertion(mu, 1, y, |s, g| out.add_av(&g, &scale.signed(s)));
    }
    let odd = y.conv_degree().rem_euclid(2) == 1;
    let second = (&scale * Rational::new(1, 2)).signed(!odd);
    for mu in mus {
        for i in 1..=y.num_vertices() {
            for_each_bi_insertion(y, i, mu, |s, g| out.add_av(&g, &second.signed(s)));
        }
    }
}

/// The differential `[Σ_k O(μ_k), -]`.
pub fn orbit_diff(x: &BiVec, mus: &[BiGraph]) -> BiVec {
    let terms: Vec<(&BiGraph, &Rational)> = x.terms().iter().collect();
    let parts: Vec<BiVec> = terms
        .par_iter()
        .map(|&(y, c)| {
            let mut out = BiVec::zero(x.degree() + 1);
            diff_term(y, c, mus, &mut out);
            out
        })
        .collect();
    merge(x.degree() + 1, parts)
}

/// Single-term version of [`orbit_diff`] without parallel overhead.
pub fn orbit_diff_term(y: &BiGraph, mus: &[BiGraph]) -> BiVec {
    let mut out = BiVec::zero(y.conv_degree() + 1);
    diff_term(y, &Rational::one(), mus, &mut out);
    out
}

/// The MC terms of the convolution complexes: `Γ•−• ⊗ b₁b₂` and
/// `Γ•• ⊗ {b₁,b₂}`.
pub fn conv_mus() -> Vec<BiGraph> {
    vec![edge_bigraph(false), edge_bigraph(true)]
}

/// The MC term of fGC.
pub fn fgc_mus() -> Vec<BiGraph> {
    vec![edge_bigraph(false)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mc_squares_to_zero() {
        for mus in [conv_mus(), fgc_mus()] {
            let a = mc_vector(&mus);
            assert!(orbit_bracket(&a, &a).is_zero());
        }
    }

    #[test]
    fn short_form_matches_bracket() {
        let mus = conv_mus();
        let mc = mc_vector(&mus);
        let samples = [
            BiGraph::new(1, vec![], vec![]).unwrap(),
            BiGraph::new(2, vec![(1, 2)], vec![]).unwrap(),
            BiGraph::new(3, vec![(1, 2)], vec![(2, 3)]).unwrap(),
            BiGraph::new(3, vec![(1, 2), (1, 3)], vec![(2, 3)]).unwrap(),
            BiGraph::new(2, vec![(1, 1)], vec![(1, 2)]).unwrap(),
        ];
        for y in samples {
            let x = BiVec::orbit(&y);
            assert_eq!(orbit_diff(&x, &mus), orbit_bracket(&mc, &x), "{y}");
            assert!(orbit_diff(&orbit_diff(&x, &mus), &mus).is_zero(), "{y}");
        }
    }

    #[test]
    fn unit_differential() {
        let unit = BiVec::orbit(&BiGraph::new(1, vec![], vec![]).unwrap());
        assert_eq!(orbit_diff(&unit, &conv_mus()), mc_vector(&conv_mus()));
        assert_eq!(orbit_diff(&unit, &fgc_mus()), mc_vector(&fgc_mus()));
    }
}
