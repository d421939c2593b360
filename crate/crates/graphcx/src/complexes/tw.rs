//! Twisted complexes `TwGra` and `TwGer`.
//!
//! An element with `r` neutral and `n` operational vertices lives in arity
//! `r + n` and is `S_r`-invariant in the first `r` labels.  The neutral
//! vertices raise the degree by two each.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::ger::{insert_ger, iota, sym_act as ger_sym_act, GerError, GerMono, GerVec, Grading};
use crate::gra::{for_each_insertion, sort_edges, GraVec};
use crate::graphs::{class_info, cycle, shuffles, LabeledGraph, Permutation};
use crate::qlinalg::Rational;

fn sign_of_parity(odd: bool) -> Rational {
    Rational::sign(odd)
}

/// `∂Av_r(Γ) = Av_{r+1}(Γ•−• ∘_2 Γ)
///   - (-1)^e Av_{r+1}(Σ_{i=1}^n ς_{r+1,r+i}(Γ ∘_{r+i} Γ•−•))
///   - ((-1)^e / 2) Σ_{i=1}^r Av_{r+1}(Γ ∘_i Γ•−•)`,
/// applied to canonical orbit representatives.
pub fn tw_diff_gra(x: &GraVec) -> GraVec {
    let (r, n) = (x.r_neutral(), x.n_op());
    let degree = x.degree() + 1;
    let terms: Vec<(&LabeledGraph, &Rational)> = x.terms().iter().collect();
    let parts: Vec<GraVec> = terms
        .par_iter()
        .map(|&(k, c)| {
            let mut out = GraVec::zero(r + 1, n, degree);
            tw_diff_gra_term(k, c, &mut out);
            out
        })
        .collect();
    let mut out = GraVec::zero(r + 1, n, degree);
    for p in parts {
        out.add_assign(&p);
    }
    out
}

fn tw_diff_gra_term(k: &LabeledGraph, c: &Rational, out: &mut GraVec) {
    let (r, n) = (k.r_neutral(), k.n_op());
    let total = r + n;
    let scale = c * Rational::new(1, class_info(k).aut as i64);
    let odd = k.num_edges() % 2 == 1;
    let edge: [(u8, u8); 1] = [(1, 2)];
    for_each_insertion(&edge, 2, k.edges(), total as u8, |edges| {
        out.add_av(&LabeledGraph::from_raw(r + 1, n, edges), &scale);
    });
    let second = scale.signed(!odd);
    for i in 1..=n {
        let cyc = cycle(r + 1, r + i, total + 1).expect("in range");
        for_each_insertion(k.edges(), (r + i) as u8, &edge, 2, |edges| {
            let g = LabeledGraph::from_raw(r + 1, n, edges).relabel_all(&cyc);
            out.add_av(&g, &second);
        });
    }
    let third = (&scale * Rational::new(1, 2)).signed(!odd);
    for i in 1..=r {
        for_each_insertion(k.edges(), i as u8, &edge, 2, |edges| {
            out.add_av(&LabeledGraph::from_raw(r + 1, n, edges), &third);
        });
    }
}

/// The shuffle sums of the twisted differential as permutations of
/// `1..=r+1+n`, grouped by summand: `Sh_{2,r-1}`, `Sh_{1,r}` and the
/// composites `τ' ∘ ς_{r+1,r+i}` for `τ' ∈ Sh_{r,1}`, `1 ≤ i ≤ n`.
struct TwPerms {
    first: Vec<Permutation>,
    second: Vec<Permutation>,
    third: Vec<(usize, Vec<Permutation>)>,
}

fn tw_perms(r: usize, n: usize) -> TwPerms {
    let first = if r >= 1 { shuffles(&[2, r - 1]).iter().map(|s| s.extend(n)).collect() } else { Vec::new() };
    let second = shuffles(&[1, r]).iter().map(|s| s.extend(n)).collect();
    let taus: Vec<Permutation> = shuffles(&[r, 1]).iter().map(|s| s.extend(n)).collect();
    let third = (1..=n)
        .map(|i| {
            let cyc = cycle(r + 1, r + i, r + 1 + n).expect("in range");
            (i, taus.iter().map(|t| t.compose(&cyc)).collect())
        })
        .collect();
    TwPerms { first, second, third }
}

/// The twisted differential on TwGra computed literally on expanded
/// graphs with the shuffle sums:
/// `∂v = -(-1)^{|v|} Σ_{Sh_{2,r-1}} σ(v ∘_1 μ) + Σ_{Sh_{1,r}} τ(μ ∘_2 v)
///   - (-1)^{|v|} Σ_{Sh_{r,1}} Σ_i τ' ς_{r+1,r+i}(v ∘_{r+i} μ)`.
pub fn tw_diff_gra_literal(x: &GraVec) -> GraVec {
    let (r, n) = (x.r_neutral(), x.n_op());
    let total = r + n;
    let perms = tw_perms(r, n);
    let edge: [(u8, u8); 1] = [(1, 2)];
    let mut acc: BTreeMap<LabeledGraph, Rational> = BTreeMap::new();
    let mut push = |edges: Vec<(u8, u8)>, p: &Permutation, c: &Rational| {
        let g = LabeledGraph::from_raw(r + 1, n, edges).relabel_all(p);
        let (g, odd) = sort_edges(&g);
        if g.edges().windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let slot = acc.entry(g.clone()).or_insert_with(Rational::zero);
        *slot += c.signed(odd);
        if slot.is_zero() {
            acc.remove(&g);
        }
    };
    for (g, c) in x.expand() {
        let minus = c.signed(g.num_edges() % 2 == 0);
        let mut ins = Vec::new();
        for_each_insertion(g.edges(), 1, &edge, 2, |e| ins.push(e));
        for p in &perms.first {
            for e in &ins {
                push(e.clone(), p, &minus);
            }
        }
        let mut ins = Vec::new();
        for_each_insertion(&edge, 2, g.edges(), total as u8, |e| ins.push(e));
        for p in &perms.second {
            for e in &ins {
                push(e.clone(), p, &c);
            }
        }
        for (i, ps) in &perms.third {
            let mut ins = Vec::new();
            for_each_insertion(g.edges(), (r + i) as u8, &edge, 2, |e| ins.push(e));
            for p in ps {
                for e in &ins {
                    push(e.clone(), p, &minus);
                }
            }
        }
    }
    GraVec::from_expanded(r + 1, n, x.degree() + 1, &acc)
}

/// An element of `TwGer` with `r` neutral and `n` operational inputs: an
/// `S_r`-invariant element of `Ger(r + n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwGerVec {
    r: usize,
    n: usize,
    v: GerVec,
}

impl TwGerVec {
    pub fn new(r: usize, n: usize, v: GerVec) -> Result<Self, GerError> {
        if v.arity() != r + n || v.grading() != Grading::Ger {
            return Err(GerError::KindMismatch);
        }
        Ok(TwGerVec { r, n, v })
    }

    /// `Σ_{σ ∈ S_r} σ(m)` for a basis monomial of arity `r + n`.
    pub fn symmetrized(r: usize, n: usize, m: &GerMono) -> Self {
        let base = GerVec::basis_element(m.clone(), Grading::Ger);
        let mut v = GerVec::zero(r + n, Grading::Ger, base.degree());
        for p in crate::graphs::all_permutations(r) {
            v.add_scaled(&ger_sym_act(&p.extend(n), &base).expect("arity matches"), &Rational::one());
        }
        TwGerVec { r, n, v }
    }

    pub fn r_neutral(&self) -> usize {
        self.r
    }

    pub fn n_op(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.v.degree() + 2 * self.r as i64
    }

    pub fn ger(&self) -> &GerVec {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    /// Invariance under the neutral relabelings.
    pub fn is_invariant(&self) -> bool {
        (1..self.r.max(1)).all(|a| {
            let mut images: Vec<usize> = (1..=self.r + self.n).collect();
            images.swap(a - 1, a);
            let p = Permutation::from_images(images).expect("transposition");
            ger_sym_act(&p, &self.v).expect("arity matches") == self.v
        })
    }
}

/// The twisted differential on TwGer with `μ = {a_1, a_2}`, by the same
/// shuffle formula as [`tw_diff_gra_literal`].
pub fn tw_diff_ger(x: &TwGerVec) -> TwGerVec {
    let (r, n) = (x.r, x.n);
    let perms = tw_perms(r, n);
    let mu = crate::ger::normalize(&"{1,2}".parse().expect("valid")).expect("valid");
    let v = &x.v;
    let minus = sign_of_parity(v.degree().rem_euclid(2) == 0);
    let mut out = GerVec::zero(r + n + 1, Grading::Ger, v.degree() - 1);
    let first = insert_ger(v, 1, &mu).expect("arity");
    for p in &perms.first {
        out.add_scaled(&ger_sym_act(p, &first).expect("arity"), &minus);
    }
    let second = insert_ger(&mu, 2, v).expect("arity");
    for p in &perms.second {
        out.add_scaled(&ger_sym_act(p, &second).expect("arity"), &Rational::one());
    }
    for (i, ps) in &perms.third {
        let third = insert_ger(v, r + i, &mu).expect("arity");
        for p in ps {
            out.add_scaled(&ger_sym_act(p, &third).expect("arity"), &minus);
        }
    }
    TwGerVec { r: r + 1, n, v: out }
}

/// ι of a TwGer element as a TwGra element in orbit coordinates.
pub fn tw_iota(x: &TwGerVec) -> GraVec {
    let flat = iota(&x.v);
    let expanded: BTreeMap<LabeledGraph, Rational> = flat.terms().iter().map(|(g, c)| (g.with_split(x.r), c.clone())).collect();
    GraVec::from_expanded(x.r, x.n, x.degree(), &expanded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ger::basis;

    fn g(r: usize, n: usize, e: &[(usize, usize)]) -> GraVec {
        GraVec::orbit(&LabeledGraph::new(r, n, e.to_vec()).unwrap())
    }

    #[test]
    fn two_point_graphs_are_closed() {
        let empty = g(0, 2, &[]);
        let edge = g(0, 2, &[(1, 2)]);
        assert!(!empty.is_zero() && !edge.is_zero());
        for x in [empty, edge] {
            assert!(tw_diff_gra(&x).is_zero());
            assert!(tw_diff_gra_literal(&x).is_zero());
        }
    }

    #[test]
    fn formulas_agree_and_square_to_zero() {
        let samples = [
            g(0, 1, &[]),
            g(1, 0, &[]),
            g(0, 2, &[(1, 2)]),
            g(1, 1, &[(1, 2)]),
            g(1, 2, &[(1, 2), (1, 3)]),
            g(2, 1, &[(1, 3), (2, 3)]),
            g(2, 2, &[(1, 3), (2, 4), (1, 2)]),
            g(3, 0, &[(1, 2), (2, 3), (1, 3)]),
            g(1, 1, &[(1, 1), (1, 2)]),
        ];
        for x in samples {
            let d = tw_diff_gra(&x);
            assert_eq!(d, tw_diff_gra_literal(&x), "{x}");
            assert!(tw_diff_gra(&d).is_zero(), "{x}");
        }
    }

    #[test]
    fn ger_is_closed_in_twger() {
        for n in 1..=3 {
            for m in basis(n, Grading::Ger) {
                let x = TwGerVec::symmetrized(0, n, &m);
                assert!(tw_diff_ger(&x).is_zero(), "{m}");
            }
        }
    }

    #[test]
    fn twger_square_and_iota() {
        for (r, n) in [(1, 1), (2, 1), (1, 2), (2, 0)] {
            for m in basis(r + n, Grading::Ger) {
                let x = TwGerVec::symmetrized(r, n, &m);
                assert!(x.is_invariant());
                let d = tw_diff_ger(&x);
                assert!(d.is_invariant(), "{m}");
                assert!(tw_diff_ger(&d).is_zero(), "{m}");
                assert_eq!(tw_iota(&d), tw_diff_gra(&tw_iota(&x)), "{m}");
            }
        }
    }
}
