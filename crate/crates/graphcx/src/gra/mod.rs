//! The operad Gra: linear combinations of graphs, symmetric-group actions,
//! insertions by edge reconnection, and the averaging maps.
//!
//! A [`GraVec`] with `r` neutral vertices is an element of the `S_r`
//! invariants.  A stored term `c * K` stands for `c` times the signed orbit
//! sum of the canonical graph `K` over relabelings of the neutral vertices,
//! so the coefficient of `K` itself in the expanded sum is `c`.  For `r = 0`
//! this is the plain graph.

mod bigraph;
mod insertion;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use bigraph::{bi_class_info, for_each_bi_insertion, iota_image_bigraph, tensor_bigraphs, BiClass, BiGraph, BiVec};
pub use insertion::for_each_insertion;

use crate::graphs::{act, class_info, GraphError, LabeledGraph, Permutation};
use crate::qlinalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("malformed vector: {0}")]
    Parse(String),
}

/// Homogeneous combination of canonical graphs with a fixed `(r, n)`
/// profile.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraVec {
    r: usize,
    n: usize,
    degree: i64,
    terms: BTreeMap<LabeledGraph, Rational>,
}

/// Degree of a graph with `r` neutral vertices and `e` edges.
pub fn gra_degree(r: usize, e: usize) -> i64 {
    2 * r as i64 - e as i64
}

impl GraVec {
    pub fn zero(r: usize, n: usize, degree: i64) -> Self {
        GraVec { r, n, degree, terms: BTreeMap::new() }
    }

    /// The element `sign * K` represented by a single labeled graph with
    /// its orbit: for `r = 0` this is the graph itself.
    pub fn orbit(g: &LabeledGraph) -> Self {
        let mut v = GraVec::zero(g.r_neutral(), g.n_op(), gra_degree(g.r_neutral(), g.num_edges()));
        v.add_orbit(g, &Rational::one());
        v
    }

    pub fn r_neutral(&self) -> usize {
        self.r
    }

    pub fn n_op(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Number of edges shared by all terms.
    pub fn edge_count(&self) -> usize {
        (2 * self.r as i64 - self.degree) as usize
    }

    pub fn terms(&self) -> &BTreeMap<LabeledGraph, Rational> {
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

    pub fn coefficient(&self, key: &LabeledGraph) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_graph(&self, g: &LabeledGraph) {
        assert!(
            g.r_neutral() == self.r && g.n_op() == self.n && gra_degree(g.r_neutral(), g.num_edges()) == self.degree,
            "graph {g} does not match profile r={} n={} deg={}",
            self.r,
            self.n,
            self.degree
        );
    }

    /// Adds `c` at an already canonical key.
    pub fn add_canonical(&mut self, key: LabeledGraph, c: &Rational) {
        if c.is_zero() {
            return;
        }
        self.check_graph(&key);
        let mut remove = false;
        {
            let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                remove = true;
            }
        }
        if remove {
            self.terms.remove(&key);
        }
    }

    /// Adds `c` times the signed orbit sum of `g`.
    pub fn add_orbit(&mut self, g: &LabeledGraph, c: &Rational) {
        let info = class_info(g);
        if info.odd {
            return;
        }
        let c = c.signed(info.sign_odd);
        self.add_canonical(info.graph, &c);
    }

    /// Adds `c * Σ_{σ ∈ S_r} σ(g)`.
    pub fn add_av(&mut self, g: &LabeledGraph, c: &Rational) {
        let info = class_info(g);
        if info.odd {
            return;
        }
        let c = c.signed(info.sign_odd) * Rational::from_int(info.aut as i64);
        self.add_canonical(info.graph, &c);
    }

    pub fn add_assign(&mut self, other: &GraVec) {
        self.check_profile(other);
        for (k, c) in &other.terms {
            self.add_canonical(k.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &GraVec, s: &Rational) {
        self.check_profile(other);
        for (k, c) in &other.terms {
            self.add_canonical(k.clone(), &(c * s));
        }
    }

    pub fn scaled(&self, s: &Rational) -> GraVec {
        let mut out = GraVec::zero(self.r, self.n, self.degree);
        out.add_scaled(self, s);
        out
    }

    fn check_profile(&self, other: &GraVec) {
        assert!(
            (self.r, self.n) == (other.r, other.n) && (self.degree == other.degree || other.is_zero()),
            "profile mismatch"
        );
    }

    /// Expanded form: every labeled graph of every orbit with its
    /// coefficient.  Only sensible for small `r`.
    pub fn expand(&self) -> BTreeMap<LabeledGraph, Rational> {
        let mut out = BTreeMap::new();
        let perms = crate::graphs::all_permutations(self.r);
        for (k, c) in &self.terms {
            let mut seen = std::collections::BTreeSet::new();
            for p in &perms {
                let g = crate::graphs::act_neutral(p, k).expect("arity matches");
                let (sorted, odd) = sort_edges(&g);
                if seen.insert(sorted.clone()) {
                    out.insert(sorted, c.signed(odd));
                }
            }
        }
        out
    }

    /// Reads off orbit coordinates from an expanded invariant combination.
    pub fn from_expanded(r: usize, n: usize, degree: i64, expanded: &BTreeMap<LabeledGraph, Rational>) -> Self {
        let mut v = GraVec::zero(r, n, degree);
        for (g, c) in expanded {
            let info = class_info(g);
            if !info.odd && info.graph == *g {
                v.add_canonical(g.clone(), c);
            }
        }
        v
    }
}

/// Sorts the edge list, returning the sorted graph and the parity of the
/// sorting permutation.
pub fn sort_edges(g: &LabeledGraph) -> (LabeledGraph, bool) {
    let odd = crate::graphs::sort_parity_odd(g.edges());
    let mut e = g.edges().to_vec();
    e.sort_unstable();
    (LabeledGraph::from_raw(g.r_neutral(), g.n_op(), e), odd)
}

/// `outer ∘_i inner` for plain Gra elements (no neutral vertices).
pub fn insert(outer: &GraVec, i: usize, inner: &GraVec) -> Result<GraVec, GraError> {
    if outer.r != 0 || inner.r != 0 {
        return Err(GraError::ProfileMismatch("insertion needs r = 0 operands".into()));
    }
    if i == 0 || i > outer.n {
        return Err(GraphError::IndexOutOfRange { index: i, bound: outer.n }.into());
    }
    let n = outer.n + inner.n - 1;
    let mut out = GraVec::zero(0, n, outer.degree + inner.degree);
    for (a, ca) in &outer.terms {
        for (b, cb) in &inner.terms {
            let c = ca * cb;
            for_each_insertion(a.edges(), i as u8, b.edges(), inner.n as u8, |edges| {
                out.add_orbit(&LabeledGraph::from_raw(0, n, edges), &c);
            });
        }
    }
    Ok(out)
}

/// Relabels operational vertices termwise.
pub fn sym_act(p: &Permutation, v: &GraVec) -> Result<GraVec, GraError> {
    if p.len() != v.n {
        return Err(GraphError::ArityMismatch { expected: v.n, got: p.len() }.into());
    }
    let mut out = GraVec::zero(v.r, v.n, v.degree);
    for (k, c) in &v.terms {
        out.add_orbit(&act(p, k)?, c);
    }
    Ok(out)
}

/// `Σ_{σ ∈ S_r} σ(g)` over the neutral vertices of `g`.
pub fn av_r(g: &LabeledGraph, r: usize) -> Result<GraVec, GraError> {
    if r != g.r_neutral() {
        return Err(GraError::ProfileMismatch(format!("graph has {} neutral vertices, not {r}", g.r_neutral())));
    }
    let mut v = GraVec::zero(g.r_neutral(), g.n_op(), gra_degree(g.r_neutral(), g.num_edges()));
    v.add_av(g, &Rational::one());
    Ok(v)
}

/// Full symmetrization of a graph, all of whose vertices are treated as
/// neutral.
pub fn av(g: &LabeledGraph) -> FgcVec {
    let g = g.with_split(g.num_vertices());
    let mut x = FgcVec::zero(fgc_degree(g.num_vertices(), g.num_edges()));
    x.add_av(&g, &Rational::one());
    x
}

impl fmt::Display for GraVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gravec r={} n={} deg={}", self.r, self.n, self.degree)?;
        for (k, c) in &self.terms {
            writeln!(f, "{c} * {k}")?;
        }
        Ok(())
    }
}

fn parse_header(line: &str, tag: &str, names: &[&str]) -> Result<Vec<i64>, String> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(format!("expected header {tag:?}, got {line:?}"));
    }
    let mut out = Vec::new();
    for name in names {
        let p = parts.next().ok_or_else(|| format!("missing field {name}"))?;
        let v = p
            .strip_prefix(name)
            .and_then(|x| x.strip_prefix('='))
            .ok_or_else(|| format!("expected {name}=, got {p:?}"))?;
        out.push(v.parse().map_err(|_| format!("bad value in {p:?}"))?);
    }
    if parts.next().is_some() {
        return Err(format!("trailing fields in header {line:?}"));
    }
    Ok(out)
}

pub(crate) fn parse_header_fields(line: &str, tag: &str, names: &[&str]) -> Result<Vec<i64>, String> {
    parse_header(line, tag, names)
}

/// Splits a term line `<p/q> * <rest>`.
pub(crate) fn split_term(line: &str) -> Result<(Rational, &str), String> {
    let (c, rest) = line.split_once(" * ").ok_or_else(|| format!("expected `<p/q> * ...`, got {line:?}"))?;
    let c: Rational = c.trim().parse().map_err(|_| format!("bad coefficient in {line:?}"))?;
    Ok((c, rest.trim()))
}

impl FromStr for GraVec {
    type Err = GraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| GraError::Parse("empty input".into()))?;
        let h = parse_header(head, "gravec", &["r", "n", "deg"]).map_err(GraError::Parse)?;
        if h[0] < 0 || h[1] < 0 {
            return Err(GraError::Parse(head.to_string()));
        }
        let mut v = GraVec::zero(h[0] as usize, h[1] as usize, h[2]);
        for line in lines {
            let (c, rest) = split_term(line).map_err(GraError::Parse)?;
            let g: LabeledGraph = rest.parse()?;
            if g.r_neutral() != v.r || g.n_op() != v.n || gra_degree(g.r_neutral(), g.num_edges()) != v.degree {
                return Err(GraError::ProfileMismatch(format!("term {rest} does not match the header")));
            }
            v.add_orbit(&g, &c);
        }
        Ok(v)
    }
}

/// Degree in fGC of a graph with `n` vertices and `e` edges.
pub fn fgc_degree(n: usize, e: usize) -> i64 {
    2 * n as i64 - 2 - e as i64
}

/// A finitely supported element of fGC: symmetrized graphs with all
/// vertices neutral, stored by orbit as in [`GraVec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgcVec {
    degree: i64,
    terms: BTreeMap<LabeledGraph, Rational>,
}

impl FgcVec {
    pub fn zero(degree: i64) -> Self {
        FgcVec { degree, terms: BTreeMap::new() }
    }

    /// The signed orbit sum of `g`, all vertices neutral.
    pub fn orbit(g: &LabeledGraph) -> Self {
        let g = g.with_split(g.num_vertices());
        let mut x = FgcVec::zero(fgc_degree(g.num_vertices(), g.num_edges()));
        x.add_orbit(&g, &Rational::one());
        x
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<LabeledGraph, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &LabeledGraph) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// The component with `n` vertices.
    pub fn component(&self, n: usize) -> GraVec {
        let mut v = GraVec::zero(n, 0, self.degree + 2);
        for (k, c) in self.terms.range(LabeledGraph::edgeless(n, 0)..) {
            if k.num_vertices() != n {
                break;
            }
            v.add_canonical(k.clone(), c);
        }
        v
    }

    pub fn vertex_counts(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.keys().map(|k| k.num_vertices()).collect();
        out.dedup();
        out
    }

    pub fn add_canonical(&mut self, key: LabeledGraph, c: &Rational) {
        if c.is_zero() {
            return;
        }
        assert!(
            key.n_op() == 0 && fgc_degree(key.num_vertices(), key.num_edges()) == self.degree,
            "graph {key} does not have fGC degree {}",
            self.degree
        );
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_orbit(&mut self, g: &LabeledGraph, c: &Rational) {
        let g = g.with_split(g.num_vertices());
        let info = class_info(&g);
        if !info.odd {
            self.add_canonical(info.graph, &c.signed(info.sign_odd));
        }
    }

    pub fn add_av(&mut self, g: &LabeledGraph, c: &Rational) {
        let g = g.with_split(g.num_vertices());
        let info = class_info(&g);
        if !info.odd {
            self.add_canonical(info.graph, &(c.signed(info.sign_odd) * Rational::from_int(info.aut as i64)));
        }
    }

    pub fn add_scaled(&mut self, other: &FgcVec, s: &Rational) {
        assert!(other.is_zero() || other.degree == self.degree, "degree mismatch");
        for (k, c) in &other.terms {
            self.add_canonical(k.clone(), &(c * s));
        }
    }

    pub fn scaled(&self, s: &Rational) -> FgcVec {
        let mut out = FgcVec::zero(self.degree);
        out.add_scaled(self, s);
        out
    }
}

impl fmt::Display for FgcVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fgcvec deg={}", self.degree)?;
        for (k, c) in &self.terms {
            writeln!(f, "{c} * {k}")?;
        }
        Ok(())
    }
}

impl FromStr for FgcVec {
    type Err = GraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| GraError::Parse("empty input".into()))?;
        let h = parse_header(head, "fgcvec", &["deg"]).map_err(GraError::Parse)?;
        let mut x = FgcVec::zero(h[0]);
        for line in lines {
            let (c, rest) = split_term(line).map_err(GraError::Parse)?;
            let g: LabeledGraph = rest.parse()?;
            if g.n_op() != 0 || fgc_degree(g.num_vertices(), g.num_edges()) != x.degree {
                return Err(GraError::ProfileMismatch(format!("term {rest} does not match the header")));
            }
            x.add_orbit(&g, &c);
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, polygon};

    fn g(r: usize, n: usize, e: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(r, n, e.to_vec()).unwrap()
    }

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    #[test]
    fn triangle_insert_edge() {
        let tri = GraVec::orbit(&g(0, 3, &[(1, 2), (2, 3), (1, 3)]));
        let edge = GraVec::orbit(&g(0, 2, &[(1, 2)]));
        let out = insert(&tri, 2, &edge).unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(out.degree(), -4);
        for c in out.terms().values() {
            assert_eq!(c.abs(), q(1));
        }
    }

    #[test]
    fn unit_and_edgeless() {
        let two = GraVec::orbit(&g(0, 2, &[]));
        let out = insert(&two, 1, &two).unwrap();
        assert_eq!(out, GraVec::orbit(&g(0, 3, &[])));
        let unit = GraVec::orbit(&g(0, 1, &[]));
        let x = GraVec::orbit(&g(0, 3, &[(1, 2), (3, 3)]));
        for i in 1..=3 {
            assert_eq!(insert(&x, i, &unit).unwrap(), x);
        }
        assert_eq!(insert(&unit, 1, &x).unwrap(), x);
        assert!(insert(&x, 4, &unit).is_err());
    }

    #[test]
    fn sym_act_examples() {
        let swap = Permutation::from_images(vec![2, 1]).unwrap();
        let edge = GraVec::orbit(&g(0, 2, &[(1, 2)]));
        assert_eq!(sym_act(&swap, &edge).unwrap(), edge);
        let looped = GraVec::orbit(&g(0, 2, &[(1, 1)]));
        assert_eq!(sym_act(&swap, &looped).unwrap(), GraVec::orbit(&g(0, 2, &[(2, 2)])));
        assert_eq!(sym_act(&Permutation::identity(2), &looped).unwrap(), looped);
    }

    #[test]
    fn averaging() {
        assert!(av(&polygon(4)).is_zero());
        assert_eq!(av(&g(1, 0, &[])), FgcVec::orbit(&g(1, 0, &[])));
        let t = av(&complete(4));
        assert!(!t.is_zero());
        assert_eq!(t.degree(), 0);
        let x = av_r(&g(0, 3, &[(1, 2)]), 0).unwrap();
        assert_eq!(x, GraVec::orbit(&g(0, 3, &[(1, 2)])));
        let y = av_r(&g(1, 1, &[(1, 2)]), 1).unwrap();
        assert_eq!(y.terms().values().next(), Some(&q(1)));
        // Swapping the two neutral vertices exchanges the two edges.
        assert!(av_r(&g(2, 1, &[(1, 3), (2, 3)]), 2).unwrap().is_zero());
    }

    #[test]
    fn expand_round_trip() {
        let k = g(2, 1, &[(1, 2), (1, 3)]);
        let v = GraVec::orbit(&k);
        let e = v.expand();
        assert_eq!(e.len(), 2);
        assert_eq!(GraVec::from_expanded(2, 1, v.degree(), &e), v);
    }

    #[test]
    fn text_round_trip() {
        let mut v = GraVec::orbit(&g(1, 2, &[(1, 2), (1, 3)]));
        v.add_orbit(&g(1, 2, &[(2, 3), (1, 1)]), &Rational::new(-3, 2));
        let s = v.to_string();
        assert_eq!(s.parse::<GraVec>().unwrap(), v);
        let mut x = av(&complete(4));
        x.add_av(&g(4, 0, &[(1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4)]), &q(2));
        assert_eq!(x.to_string().parse::<FgcVec>().unwrap(), x);
        assert!("gravec r=0 n=2 deg=-1\n1/1 * g r=0 n=2 e=2 : 1-2, 1-1".parse::<GraVec>().is_err());
    }
}
