//! Graphs with solid and dashed edges on a shared vertex set, used to
//! represent tensors in `Gra(n) ⊗ Λ⁻²Gra(n)` and their `S_n` orbits.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{for_each_insertion, split_term, GraError};
use crate::ger::{iota_mono, GerVec};
use crate::graphs::canon::canon;
use crate::graphs::{components_of, sort_parity_odd, GraphError, Permutation};
use crate::qlinalg::Rational;

/// A graph on `1..=n` with an ordered list of solid edges (the left tensor
/// factor) and an ordered list of dashed edges (the right factor).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiGraph {
    n: usize,
    solid: Vec<(u8, u8)>,
    dashed: Vec<(u8, u8)>,
}

fn norm(edges: Vec<(u8, u8)>) -> Vec<(u8, u8)> {
    edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()
}

impl BiGraph {
    pub fn new(n: usize, solid: Vec<(u8, u8)>, dashed: Vec<(u8, u8)>) -> Result<Self, GraphError> {
        if n == 0 || n >= u8::MAX as usize {
            return Err(GraphError::EmptyGraph);
        }
        for &(a, b) in solid.iter().chain(&dashed) {
            for x in [a, b] {
                if x == 0 || x as usize > n {
                    return Err(GraphError::IndexOutOfRange { index: x as usize, bound: n });
                }
            }
        }
        Ok(BiGraph { n, solid: norm(solid), dashed: norm(dashed) })
    }

    pub(crate) fn from_raw(n: usize, solid: Vec<(u8, u8)>, dashed: Vec<(u8, u8)>) -> Self {
        BiGraph { n, solid, dashed }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn solid(&self) -> &[(u8, u8)] {
        &self.solid
    }

    pub fn dashed(&self) -> &[(u8, u8)] {
        &self.dashed
    }

    pub fn euler_char(&self) -> i64 {
        self.n as i64 - self.solid.len() as i64 - self.dashed.len() as i64
    }

    /// Degree in the convolution complex: `n + χ - 2`.
    pub fn conv_degree(&self) -> i64 {
        self.n as i64 + self.euler_char() - 2
    }

    /// Connectedness of the union of both edge sets.
    pub fn is_connected(&self) -> bool {
        components_of(self.n, self.solid.iter().chain(&self.dashed).copied()).len() == 1
    }

    pub fn relabel(&self, p: &Permutation) -> BiGraph {
        let f = |l: &[(u8, u8)]| -> Vec<(u8, u8)> {
            norm(l.iter().map(|&(a, b)| (p.apply(a as usize) as u8, p.apply(b as usize) as u8)).collect())
        };
        BiGraph { n: self.n, solid: f(&self.solid), dashed: f(&self.dashed) }
    }

    /// Both edge lists sorted, with the parity of the combined reordering.
    pub fn sorted(&self) -> (BiGraph, bool) {
        let odd = sort_parity_odd(&self.solid) ^ sort_parity_odd(&self.dashed);
        let (mut s, mut d) = (self.solid.clone(), self.dashed.clone());
        s.sort_unstable();
        d.sort_unstable();
        (BiGraph { n: self.n, solid: s, dashed: d }, odd)
    }

    fn sort_key(&self) -> (usize, usize, usize, &[(u8, u8)], &[(u8, u8)]) {
        (self.n, self.solid.len(), self.dashed.len(), &self.solid, &self.dashed)
    }
}

impl PartialOrd for BiGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BiGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

fn fmt_edges(f: &mut fmt::Formatter<'_>, edges: &[(u8, u8)]) -> fmt::Result {
    for (i, (a, b)) in edges.iter().enumerate() {
        let sep = if i == 0 { " " } else { ", " };
        write!(f, "{sep}{a}-{b}")?;
    }
    Ok(())
}

impl fmt::Display for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b n={} s={} d={} :", self.n, self.solid.len(), self.dashed.len())?;
        fmt_edges(f, &self.solid)?;
        write!(f, " |")?;
        fmt_edges(f, &self.dashed)
    }
}

fn parse_edges(s: &str) -> Option<Vec<(u8, u8)>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (a, b) = item.split_once('-')?;
        out.push((a.trim().parse().ok()?, b.trim().parse().ok()?));
    }
    Some(out)
}

impl FromStr for BiGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Parse(s.to_string());
        let (head, tail) = s.trim().split_once(':').ok_or_else(bad)?;
        let h = super::parse_header(head.trim(), "b", &["n", "s", "d"]).map_err(|_| bad())?;
        let (sp, dp) = tail.split_once('|').ok_or_else(bad)?;
        let solid = parse_edges(sp).ok_or_else(bad)?;
        let dashed = parse_edges(dp).ok_or_else(bad)?;
        if h[0] < 1 || solid.len() as i64 != h[1] || dashed.len() as i64 != h[2] {
            return Err(bad());
        }
        BiGraph::new(h[0] as usize, solid, dashed)
    }
}

/// The `S_n` class of a two-colored graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiClass {
    pub graph: BiGraph,
    pub sign_odd: bool,
    /// Vanishes: an odd symmetry or a repeated edge of one color.
    pub odd: bool,
    pub aut: u64,
}

pub fn bi_class_info(g: &BiGraph) -> BiClass {
    let z = |l: &[(u8, u8)]| -> Vec<(u8, u8)> { l.iter().map(|&(a, b)| (a - 1, b - 1)).collect() };
    let (s0, d0) = (z(&g.solid), z(&g.dashed));
    match canon(g.n, g.n, &[&s0, &d0]) {
        Some(c) => {
            let up = |l: &[(u8, u8)]| -> Vec<(u8, u8)> { l.iter().map(|&(a, b)| (a + 1, b + 1)).collect() };
            BiClass { graph: BiGraph { n: g.n, solid: up(&c.lists[0]), dashed: up(&c.lists[1]) }, sign_odd: c.sign_odd, odd: c.odd, aut: c.aut }
        }
        None => BiClass { graph: g.sorted().0, sign_odd: false, odd: true, aut: 0 },
    }
}

/// Calls `emit(sign_odd, graph)` for each term of `y ∘_i z`: solid and
/// dashed parts are inserted separately, with the Koszul sign from moving
/// the solid edges of `z` past the dashed edges of `y`.
pub fn for_each_bi_insertion(y: &BiGraph, i: usize, z: &BiGraph, mut emit: impl FnMut(bool, BiGraph)) {
    let n = y.n + z.n - 1;
    let sign = y.dashed.len() % 2 == 1 && z.solid.len() % 2 == 1;
    let mut dashed_parts = Vec::new();
    for_each_insertion(&y.dashed, i as u8, &z.dashed, z.n as u8, |e| dashed_parts.push(e));
    for_each_insertion(&y.solid, i as u8, &z.solid, z.n as u8, |s| {
        for d in &dashed_parts {
            emit(sign, BiGraph { n, solid: s.clone(), dashed: d.clone() });
        }
    });
}

/// A finitely supported homogeneous combination of `S_n` orbit sums of
/// two-colored graphs.  The stored coefficient of a canonical graph is its
/// coefficient in the expanded sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiVec {
    degree: i64,
    terms: BTreeMap<BiGraph, Rational>,
}

impl BiVec {
    pub fn zero(degree: i64) -> Self {
        BiVec { degree, terms: BTreeMap::new() }
    }

    pub fn orbit(g: &BiGraph) -> Self {
        let mut v = BiVec::zero(g.conv_degree());
        v.add_orbit(g, &Rational::one());
        v
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<BiGraph, Rational> {
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

    pub fn coefficient(&self, g: &BiGraph) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_canonical(&mut self, key: BiGraph, c: &Rational) {
        if c.is_zero() {
            return;
        }
        assert_eq!(key.conv_degree(), self.degree, "graph {key} has the wrong degree");
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_orbit(&mut self, g: &BiGraph, c: &Rational) {
        let info = bi_class_info(g);
        if !info.odd {
            self.add_canonical(info.graph, &c.signed(info.sign_odd));
        }
    }

    /// Adds `c * Σ_{σ ∈ S_n} σ(g)`.
    pub fn add_av(&mut self, g: &BiGraph, c: &Rational) {
        let info = bi_class_info(g);
        if !info.odd {
            self.add_canonical(info.graph, &(c.signed(info.sign_odd) * Rational::from_int(info.aut as i64)));
        }
    }

    pub fn add_scaled(&mut self, other: &BiVec, s: &Rational) {
        assert!(other.is_zero() || other.degree == self.degree, "degree mismatch");
        for (k, c) in &other.terms {
            self.add_canonical(k.clone(), &(c * s));
        }
    }

    pub fn scaled(&self, s: &Rational) -> BiVec {
        let mut out = BiVec::zero(self.degree);
        out.add_scaled(self, s);
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(&BiGraph) -> bool) -> BiVec {
        BiVec { degree: self.degree, terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    /// Every labeled graph of every orbit with its coefficient.
    pub fn expand(&self) -> BTreeMap<BiGraph, Rational> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut seen = std::collections::BTreeSet::new();
            for p in crate::graphs::all_permutations(k.n) {
                let (g, odd) = k.relabel(&p).sorted();
                if seen.insert(g.clone()) {
                    out.insert(g, c.signed(odd));
                }
            }
        }
        out
    }

    /// Orbit coordinates of an expanded invariant combination.
    pub fn from_expanded(degree: i64, expanded: &BTreeMap<BiGraph, Rational>) -> BiVec {
        let mut v = BiVec::zero(degree);
        for (g, c) in expanded {
            let info = bi_class_info(g);
            if !info.odd && info.graph == *g {
                v.add_canonical(g.clone(), c);
            }
        }
        v
    }
}

impl fmt::Display for BiVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bivec deg={}", self.degree)?;
        for (k, c) in &self.terms {
            writeln!(f, "{c} * {k}")?;
        }
        Ok(())
    }
}

impl FromStr for BiVec {
    type Err = GraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| GraError::Parse("empty input".into()))?;
        let h = super::parse_header(head, "bivec", &["deg"]).map_err(GraError::Parse)?;
        let mut v = BiVec::zero(h[0]);
        for line in lines {
            let (c, rest) = split_term(line).map_err(GraError::Parse)?;
            let g: BiGraph = rest.parse()?;
            if g.conv_degree() != v.degree {
                return Err(GraError::ProfileMismatch(format!("term {rest} does not match the header")));
            }
            v.add_orbit(&g, &c);
        }
        Ok(v)
    }
}

/// The ι image of a Ger vector drawn with solid edges, or dashed edges when
/// `dashed` holds, as an expanded combination of labeled two-colored graphs.
pub fn iota_image_bigraph(v: &GerVec, dashed: bool) -> BTreeMap<BiGraph, Rational> {
    let mut out: BTreeMap<BiGraph, Rational> = BTreeMap::new();
    for (m, c) in v.terms() {
        for edges in iota_mono(m) {
            let g = if dashed { BiGraph::from_raw(v.arity(), Vec::new(), edges) } else { BiGraph::from_raw(v.arity(), edges, Vec::new()) };
            let (g, odd) = g.sorted();
            if g.solid.windows(2).any(|w| w[0] == w[1]) || g.dashed.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let slot = out.entry(g.clone()).or_insert_with(Rational::zero);
            *slot += c.signed(odd);
            if slot.is_zero() {
                out.remove(&g);
            }
        }
    }
    out
}

/// The expanded tensor product of two expanded combinations on the same
/// vertex set: solid edges from `left`, dashed edges from `right`.
pub fn tensor_bigraphs(left: &BTreeMap<BiGraph, Rational>, right: &BTreeMap<BiGraph, Rational>) -> BTreeMap<BiGraph, Rational> {
    let mut out = BTreeMap::new();
    for (a, ca) in left {
        for (b, cb) in right {
            debug_assert_eq!(a.n, b.n);
            let g = BiGraph { n: a.n, solid: a.solid.clone(), dashed: b.dashed.clone() };
            let slot = out.entry(g.clone()).or_insert_with(Rational::zero);
            *slot += ca * cb;
            if slot.is_zero() {
                out.remove(&g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ger::{normalize, Grading};

    fn ger(s: &str) -> GerVec {
        normalize(&s.parse().unwrap()).unwrap()
    }

    fn image(l: &str, r: &str) -> BTreeMap<BiGraph, Rational> {
        tensor_bigraphs(&iota_image_bigraph(&ger(l), false), &iota_image_bigraph(&ger(r).regraded(Grading::Lambda2Ger), true))
    }

    #[test]
    fn connectivity_examples() {
        assert!(image("1*2", "{1,2}").keys().all(BiGraph::is_connected));
        assert!(image("1*2", "1*2").keys().all(|g| !g.is_connected()));
        let both = image("{1,2}", "{1,2}");
        assert_eq!(both.len(), 1);
        assert!(both.keys().all(BiGraph::is_connected));
    }

    #[test]
    fn classes_and_text() {
        let g = BiGraph::new(2, vec![(1, 2)], vec![]).unwrap();
        let c = bi_class_info(&g);
        assert!(!c.odd);
        assert_eq!(c.aut, 2);
        assert_eq!(g.conv_degree(), 1);
        let d = BiGraph::new(3, vec![(1, 2)], vec![(2, 3), (1, 1)]).unwrap();
        assert_eq!(d.to_string().parse::<BiGraph>().unwrap(), d);
        let mut v = BiVec::orbit(&d);
        v.add_orbit(&BiGraph::new(3, vec![(1, 3), (2, 2)], vec![(1, 2)]).unwrap(), &Rational::new(2, 3));
        assert_eq!(v.to_string().parse::<BiVec>().unwrap(), v);
        assert_eq!(BiVec::from_expanded(v.degree(), &v.expand()), v);
    }

    #[test]
    fn insertion_sign() {
        let y = BiGraph::new(2, vec![], vec![(1, 2)]).unwrap();
        let z = BiGraph::new(2, vec![(1, 2)], vec![]).unwrap();
        let mut terms = Vec::new();
        for_each_bi_insertion(&y, 1, &z, |s, g| terms.push((s, g)));
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|t| t.0));
    }
}
