//! Convolution complexes `Conv(Ger∨, Gra)` and `Conv(Ger∨, Ger)` in literal
//! form: `S_n`-invariant sums of tensors `v ⊗ w` with `v` a graph or a Ger
//! monomial and `w` a `Λ⁻²Ger` monomial, all of arity `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::ComplexError;
use crate::ger::{insert_ger, iota, insert_lambda2ger, sym_act as ger_sym_act, GerMono, GerVec, Grading};
use crate::gra::{for_each_insertion, iota_image_bigraph, sort_edges, split_term, tensor_bigraphs, BiGraph, BiVec};
use crate::graphs::{all_permutations, components_of, shuffles, LabeledGraph, Permutation};
use crate::qlinalg::Rational;

/// Which operad sits on the left of the tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConvKind {
    Gra,
    Ger,
}

impl fmt::Display for ConvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConvKind::Gra => "gra",
            ConvKind::Ger => "ger",
        })
    }
}

impl FromStr for ConvKind {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gra" => Ok(ConvKind::Gra),
            "ger" => Ok(ConvKind::Ger),
            _ => Err(ComplexError::Parse(format!("unknown kind {s}"))),
        }
    }
}

/// The left tensor factor: a graph with sorted edges, or a Ger monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Left {
    Graph(LabeledGraph),
    Mono(GerMono),
}

impl Left {
    pub fn kind(&self) -> ConvKind {
        match self {
            Left::Graph(_) => ConvKind::Gra,
            Left::Mono(_) => ConvKind::Ger,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Left::Graph(g) => g.num_vertices(),
            Left::Mono(m) => m.arity(),
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Left::Graph(g) => -(g.num_edges() as i64),
            Left::Mono(m) => m.degree(Grading::Ger),
        }
    }

    /// Blocks of vertices joined by edges or words.
    fn blocks(&self) -> Vec<(u8, u8)> {
        match self {
            Left::Graph(g) => g.edges().to_vec(),
            Left::Mono(m) => word_links(m),
        }
    }
}

fn word_links(m: &GerMono) -> Vec<(u8, u8)> {
    m.words.iter().flat_map(|w| w.windows(2).map(|p| (p[0], p[1]))).collect()
}

impl fmt::Display for Left {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Left::Graph(g) => {
                let parts: Vec<String> = g.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Left::Mono(m) => write!(f, "{m}"),
        }
    }
}

fn right_degree(w: &GerMono) -> i64 {
    w.degree(Grading::Lambda2Ger)
}

/// Coefficient map over the left factor.
type LeftMap = BTreeMap<Left, Rational>;

fn add_to<K: Ord + Clone>(map: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&k);
    }
}

/// The signed graph with sorted edges, or `None` for a repeated edge.
fn graph_term(n: usize, edges: Vec<(u8, u8)>) -> Option<(LabeledGraph, bool)> {
    let (g, odd) = sort_edges(&LabeledGraph::new(0, n, edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect()).ok()?);
    if g.edges().windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((g, odd))
    }
}

fn left_insert(a: &Left, b: &Left) -> LeftMap {
    let mut out = LeftMap::new();
    match (a, b) {
        (Left::Graph(x), Left::Graph(y)) => {
            let n = x.num_vertices() + y.num_vertices() - 1;
            for_each_insertion(x.edges(), 1, y.edges(), y.num_vertices() as u8, |e| {
                if let Some((g, odd)) = graph_term(n, e) {
                    add_to(&mut out, Left::Graph(g), Rational::sign(odd));
                }
            });
        }
        (Left::Mono(x), Left::Mono(y)) => {
            let v = insert_ger(&GerVec::basis_element(x.clone(), Grading::Ger), 1, &GerVec::basis_element(y.clone(), Grading::Ger))
                .expect("valid insertion");
            for (m, c) in v.terms() {
                add_to(&mut out, Left::Mono(m.clone()), c.clone());
            }
        }
        _ => panic!("mixed kinds"),
    }
    out
}

fn left_act(p: &Permutation, map: &LeftMap) -> LeftMap {
    let mut out = LeftMap::new();
    for (l, c) in map {
        match l {
            Left::Graph(g) => {
                let (h, odd) = sort_edges(&g.relabel_all(p));
                add_to(&mut out, Left::Graph(h), c.signed(odd));
            }
            Left::Mono(m) => {
                let v = ger_sym_act(p, &GerVec::basis_element(m.clone(), Grading::Ger)).expect("arity");
                for (m2, c2) in v.terms() {
                    add_to(&mut out, Left::Mono(m2.clone()), c * c2);
                }
            }
        }
    }
    out
}

/// A homogeneous element of a convolution complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvElem {
    kind: ConvKind,
    n: usize,
    degree: i64,
    terms: BTreeMap<(Left, GerMono), Rational>,
}

impl ConvElem {
    pub fn zero(kind: ConvKind, n: usize, degree: i64) -> Self {
        ConvElem { kind, n, degree, terms: BTreeMap::new() }
    }

    pub fn kind(&self) -> ConvKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<(Left, GerMono), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · v ⊗ w` without symmetrizing.
    pub fn add_term(&mut self, left: Left, right: GerMono, c: &Rational) -> Result<(), ComplexError> {
        if left.kind() != self.kind || left.arity() != self.n || right.arity() != self.n || !right.is_basis() {
            return Err(ComplexError::Profile(format!("term {left} (x) {right} does not fit arity {} kind {}", self.n, self.kind)));
        }
        if left.degree() + right_degree(&right) != self.degree {
            return Err(ComplexError::Profile(format!("term {left} (x) {right} does not have degree {}", self.degree)));
        }
        if let Left::Mono(m) = &left {
            if !m.is_basis() {
                return Err(ComplexError::Profile(format!("{m} is not in normal form")));
            }
        }
        add_to(&mut self.terms, (left, right), c.clone());
        Ok(())
    }

    fn add_product(&mut self, left: &LeftMap, right: &GerVec, c: &Rational) {
        for (l, a) in left {
            for (r, b) in right.terms() {
                add_to(&mut self.terms, (l.clone(), r.clone()), c * a * b);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ConvElem, s: &Rational) {
        assert!(other.is_zero() || (other.kind, other.n, other.degree) == (self.kind, self.n, self.degree), "profile mismatch");
        for (k, c) in &other.terms {
            add_to(&mut self.terms, k.clone(), c * s);
        }
    }

    pub fn scaled(&self, s: &Rational) -> ConvElem {
        let mut out = ConvElem::zero(self.kind, self.n, self.degree);
        out.add_scaled(self, s);
        out
    }

    /// `Σ_{σ ∈ S_n} σ(v) ⊗ σ(w)`.
    pub fn symmetrized(left: Left, right: GerMono) -> Result<Self, ComplexError> {
        let n = right.arity();
        let mut base = ConvElem::zero(left.kind(), n, left.degree() + right_degree(&right));
        base.add_term(left, right, &Rational::one())?;
        let mut out = ConvElem::zero(base.kind, n, base.degree);
        for p in all_permutations(n) {
            out.add_scaled(&sym_act(&p, &base), &Rational::one());
        }
        Ok(out)
    }

    pub fn is_invariant(&self) -> bool {
        (1..self.n).all(|a| {
            let mut images: Vec<usize> = (1..=self.n).collect();
            images.swap(a - 1, a);
            sym_act(&Permutation::from_images(images).expect("transposition"), self) == *self
        })
    }
}

/// Simultaneous relabeling `σ(v) ⊗ σ(w)`.
pub fn sym_act(p: &Permutation, x: &ConvElem) -> ConvElem {
    let mut out = ConvElem::zero(x.kind, x.n, x.degree);
    for ((l, r), c) in &x.terms {
        let left = left_act(p, &BTreeMap::from([(l.clone(), c.clone())]));
        let right = ger_sym_act(p, &GerVec::basis_element(r.clone(), Grading::Lambda2Ger)).expect("arity");
        out.add_product(&left, &right, &Rational::one());
    }
    out
}

/// `X • X' = Σ (-1)^{|v'||w|} Σ_{σ ∈ Sh_{m,n-1}} σ(v ∘_1 v') ⊗ σ(w ∘_1 w')`
/// for `X` of arity `n` and `X'` of arity `m`.
pub fn conv_bullet(x: &ConvElem, y: &ConvElem) -> ConvElem {
    assert_eq!(x.kind, y.kind, "kind mismatch");
    let (n, m) = (x.n, y.n);
    let arity = n + m - 1;
    let degree = x.degree + y.degree;
    let shuffles = shuffles(&[m, n - 1]);
    let pairs: Vec<(&(Left, GerMono), &Rational, &(Left, GerMono), &Rational)> =
        x.terms.iter().flat_map(|(a, ca)| y.terms.iter().map(move |(b, cb)| (a, ca, b, cb))).collect();
    let parts: Vec<ConvElem> = pairs
        .par_iter()
        .map(|&((v, w), ca, (v2, w2), cb)| {
            let mut out = ConvElem::zero(x.kind, arity, degree);
            let odd = v2.degree().rem_euclid(2) == 1 && right_degree(w).rem_euclid(2) == 1;
            let c = (ca * cb).signed(odd);
            let left = left_insert(v, v2);
            let right = insert_lambda2ger(
                &GerVec::basis_element(w.clone(), Grading::Lambda2Ger),
                1,
                &GerVec::basis_element(w2.clone(), Grading::Lambda2Ger),
            )
            .expect("valid insertion");
            if left.is_empty() || right.is_zero() {
                return out;
            }
            for p in &shuffles {
                out.add_product(&left_act(p, &left), &ger_sym_act(p, &right).expect("arity"), &c);
            }
            out
        })
        .collect();
    let mut out = ConvElem::zero(x.kind, arity, degree);
    for p in parts {
        out.add_scaled(&p, &Rational::one());
    }
    out
}

/// `[X, Y] = X • Y - (-1)^{|X||Y|} Y • X`.
pub fn conv_bracket(x: &ConvElem, y: &ConvElem) -> ConvElem {
    let mut out = conv_bullet(x, y);
    let odd = x.degree.rem_euclid(2) == 1 && y.degree.rem_euclid(2) == 1;
    out.add_scaled(&conv_bullet(y, x), &Rational::sign(!odd));
    out
}

fn mono(s: &str) -> GerMono {
    s.parse().expect("valid monomial")
}

/// The Maurer–Cartan element: `a₁a₂ ⊗ {b₁,b₂} + {a₁,a₂} ⊗ b₁b₂` for Ger, and
/// its ι image `Γ•• ⊗ {b₁,b₂} + Γ•−• ⊗ b₁b₂` for Gra.
pub fn conv_mc(kind: ConvKind) -> ConvElem {
    let mut out = ConvElem::zero(kind, 2, 1);
    let (prod, br) = match kind {
        ConvKind::Ger => (Left::Mono(mono("1*2")), Left::Mono(mono("{1,2}"))),
        ConvKind::Gra => (
            Left::Graph(LabeledGraph::edgeless(0, 2)),
            Left::Graph(LabeledGraph::new(0, 2, vec![(1, 2)]).expect("valid")),
        ),
    };
    out.add_term(prod, mono("{1,2}"), &Rational::one()).expect("fits");
    out.add_term(br, mono("1*2"), &Rational::one()).expect("fits");
    out
}

/// `∂X = [MC, X]`.
pub fn conv_diff(x: &ConvElem) -> ConvElem {
    conv_bracket(&conv_mc(x.kind), x)
}

/// `½ [c, c]`.
pub fn mc_residual(c: &ConvElem) -> ConvElem {
    conv_bracket(c, c).scaled(&Rational::new(1, 2))
}

/// Pushforward along `ι : Ger → Gra` on the left factor.
pub fn iota_star(x: &ConvElem) -> ConvElem {
    let mut out = ConvElem::zero(ConvKind::Gra, x.n, x.degree);
    for ((l, r), c) in &x.terms {
        match l {
            Left::Graph(_) => add_to(&mut out.terms, (l.clone(), r.clone()), c.clone()),
            Left::Mono(m) => {
                for (g, d) in iota(&GerVec::basis_element(m.clone(), Grading::Ger)).terms() {
                    add_to(&mut out.terms, (Left::Graph(g.clone()), r.clone()), c * d);
                }
            }
        }
    }
    out
}

/// The terms whose two-colored graph image is connected.
pub fn connected_part(x: &ConvElem) -> ConvElem {
    let mut out = ConvElem::zero(x.kind, x.n, x.degree);
    for ((l, r), c) in &x.terms {
        let links = l.blocks().into_iter().chain(word_links(r));
        if components_of(x.n, links).len() == 1 {
            add_to(&mut out.terms, (l.clone(), r.clone()), c.clone());
        }
    }
    out
}

/// The orbit form of `(ι ⊗ ι)(X)` as two-colored graphs.
pub fn conv_to_bivec(x: &ConvElem) -> BiVec {
    let mut expanded: BTreeMap<BiGraph, Rational> = BTreeMap::new();
    for ((l, r), c) in &x.terms {
        let left = match l {
            Left::Graph(g) => BTreeMap::from([(
                BiGraph::new(x.n, g.edges().to_vec(), Vec::new()).expect("valid"),
                Rational::one(),
            )]),
            Left::Mono(m) => iota_image_bigraph(&GerVec::basis_element(m.clone(), Grading::Ger), false),
        };
        let right = iota_image_bigraph(&GerVec::basis_element(r.clone(), Grading::Lambda2Ger), true);
        for (g, d) in tensor_bigraphs(&left, &right) {
            add_to(&mut expanded, g, d * c);
        }
    }
    BiVec::from_expanded(x.degree, &expanded)
}

impl fmt::Display for ConvElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conv kind={} n={} deg={}", self.kind, self.n, self.degree)?;
        for ((l, r), c) in &self.terms {
            writeln!(f, "{c} * {l} (x) {r}")?;
        }
        Ok(())
    }
}

fn parse_left(kind: ConvKind, n: usize, s: &str) -> Result<Left, ComplexError> {
    let bad = || ComplexError::Parse(format!("bad left factor {s}"));
    match kind {
        ConvKind::Ger => s.parse::<GerMono>().map(Left::Mono).map_err(|_| bad()),
        ConvKind::Gra => {
            let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
            let mut edges = Vec::new();
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (a, b) = part.split_once('-').ok_or_else(bad)?;
                edges.push((a.trim().parse::<usize>().map_err(|_| bad())?, b.trim().parse::<usize>().map_err(|_| bad())?));
            }
            let g = LabeledGraph::new(0, n, edges).map_err(|_| bad())?;
            let (g, odd) = sort_edges(&g);
            if odd {
                return Err(ComplexError::Parse(format!("edges of {s} must be listed in sorted order")));
            }
            Ok(Left::Graph(g))
        }
    }
}

impl FromStr for ConvElem {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| ComplexError::Parse("empty input".into()))?;
        let mut parts = head.split_whitespace();
        if parts.next() != Some("conv") {
            return Err(ComplexError::Parse(format!("bad header {head}")));
        }
        let kind: ConvKind = parts
            .next()
            .and_then(|p| p.strip_prefix("kind="))
            .ok_or_else(|| ComplexError::Parse(format!("bad header {head}")))?
            .parse()?;
        let rest: Vec<&str> = parts.collect();
        let h = crate::gra::parse_header_fields(&format!("h {}", rest.join(" ")), "h", &["n", "deg"]).map_err(ComplexError::Parse)?;
        if h[0] < 1 {
            return Err(ComplexError::Parse("arity must be positive".into()));
        }
        let n = h[0] as usize;
        let mut out = ConvElem::zero(kind, n, h[1]);
        for line in lines {
            let (c, rest) = split_term(line).map_err(ComplexError::Parse)?;
            let (l, r) = rest.split_once(" (x) ").ok_or_else(|| ComplexError::Parse(format!("missing (x) in {line}")))?;
            let left = parse_left(kind, n, l.trim())?;
            let right: GerMono = r.trim().parse().map_err(|_| ComplexError::Parse(format!("bad monomial {r}")))?;
            out.add_term(left, right, &c)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::orbit::{conv_mus, orbit_diff};
    use super::*;

    fn a1b1(kind: ConvKind) -> ConvElem {
        let left = match kind {
            ConvKind::Ger => Left::Mono(mono("1")),
            ConvKind::Gra => Left::Graph(LabeledGraph::edgeless(0, 1)),
        };
        ConvElem::symmetrized(left, mono("1")).unwrap()
    }

    #[test]
    fn iota_star_of_mc() {
        assert_eq!(iota_star(&conv_mc(ConvKind::Ger)), conv_mc(ConvKind::Gra));
    }

    #[test]
    fn mc_equation_and_unit() {
        for kind in [ConvKind::Ger, ConvKind::Gra] {
            let a = conv_mc(kind);
            assert!(a.is_invariant());
            assert!(mc_residual(&a).is_zero(), "{kind}");
            assert_eq!(conv_diff(&a1b1(kind)), a, "{kind}");
        }
    }

    #[test]
    fn literal_matches_orbit_engine() {
        let samples = [
            ConvElem::symmetrized(Left::Mono(mono("1*2")), mono("1*2")).unwrap(),
            ConvElem::symmetrized(Left::Mono(mono("{1,2}")), mono("{1,2}")).unwrap(),
            ConvElem::symmetrized(Left::Mono(mono("1*{2,3}")), mono("2*{1,3}")).unwrap(),
            ConvElem::symmetrized(Left::Graph(LabeledGraph::new(0, 3, vec![(1, 2), (2, 3)]).unwrap()), mono("1*2*3")).unwrap(),
            ConvElem::symmetrized(Left::Graph(LabeledGraph::new(0, 2, vec![(1, 2)]).unwrap()), mono("{1,2}")).unwrap(),
        ];
        for x in samples {
            let d = conv_diff(&x);
            assert!(d.is_invariant(), "{x}");
            assert_eq!(conv_to_bivec(&d), orbit_diff(&conv_to_bivec(&x), &conv_mus()), "{x}");
            assert!(conv_diff(&d).is_zero(), "{x}");
        }
    }

    #[test]
    fn text_round_trip() {
        for kind in [ConvKind::Ger, ConvKind::Gra] {
            let a = conv_mc(kind);
            let back: ConvElem = a.to_string().parse().unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn connected_part_keeps_linked_terms() {
        let a = conv_mc(ConvKind::Ger);
        let c = connected_part(&a);
        assert_eq!(c, a);
        let split = ConvElem::symmetrized(Left::Mono(mono("1*2")), mono("1*2")).unwrap();
        assert!(connected_part(&split).is_zero());
    }
}
