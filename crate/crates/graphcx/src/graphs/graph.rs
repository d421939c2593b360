use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::canon::{canon, CanonResult};
use super::perm::Permutation;
use super::GraphError;

/// A graph on `r` neutral vertices `1..=r` and `n` operational vertices
/// `r+1..=r+n`.  The order of `edges` is the edge order; each edge is stored
/// as `(min, max)` and a loop at `v` is `(v, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    r: usize,
    n: usize,
    edges: Vec<(u8, u8)>,
}

impl LabeledGraph {
    pub fn new(r: usize, n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let nv = r + n;
        if nv == 0 || nv > u8::MAX as usize - 1 {
            return Err(GraphError::EmptyGraph);
        }
        let mut out = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > nv {
                    return Err(GraphError::IndexOutOfRange { index: x, bound: nv });
                }
            }
            out.push((a.min(b) as u8, a.max(b) as u8));
        }
        Ok(LabeledGraph { r, n, edges: out })
    }

    /// Construction from already-normalized 1-based pairs.
    pub(crate) fn from_raw(r: usize, n: usize, edges: Vec<(u8, u8)>) -> Self {
        debug_assert!(edges.iter().all(|&(a, b)| 1 <= a && a <= b && b as usize <= r + n));
        LabeledGraph { r, n, edges }
    }

    /// The edgeless graph.
    pub fn edgeless(r: usize, n: usize) -> Self {
        LabeledGraph { r, n, edges: Vec::new() }
    }

    pub fn r_neutral(&self) -> usize {
        self.r
    }

    pub fn n_op(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.r + self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// Valency with loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a as usize == v) as usize + (b as usize == v) as usize).sum()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.num_vertices()];
        for &(a, b) in &self.edges {
            val[a as usize - 1] += 1;
            val[b as usize - 1] += 1;
        }
        val
    }

    /// Vertices minus edges.
    pub fn euler_char(&self) -> i64 {
        self.num_vertices() as i64 - self.edges.len() as i64
    }

    /// Same graph with the vertex split moved: the first `r` vertices become
    /// neutral.
    pub fn with_split(&self, r: usize) -> Self {
        assert!(r <= self.num_vertices());
        LabeledGraph { r, n: self.num_vertices() - r, edges: self.edges.clone() }
    }

    /// Relabels every vertex: `v -> images(v)` on the full vertex set.
    pub fn relabel_all(&self, p: &Permutation) -> Self {
        assert_eq!(p.len(), self.num_vertices());
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (p.apply(a as usize) as u8, p.apply(b as usize) as u8);
                (x.min(y), x.max(y))
            })
            .collect();
        LabeledGraph { r: self.r, n: self.n, edges }
    }

    /// The edge list reordered: position `i` of the result holds edge
    /// `order[i]` of `self`.
    pub fn reorder_edges(&self, order: &[usize]) -> Self {
        LabeledGraph { r: self.r, n: self.n, edges: order.iter().map(|&i| self.edges[i]).collect() }
    }

    /// Appends edges (1-based pairs).
    pub fn with_edge(&self, a: usize, b: usize) -> Self {
        let mut g = self.clone();
        g.edges.push((a.min(b) as u8, a.max(b) as u8));
        g
    }

    pub(crate) fn zero_based(&self) -> Vec<(u8, u8)> {
        self.edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
    }

    /// Sort key: numeric comparison of profile, then edge list.
    fn sort_key(&self) -> (usize, usize, usize, &[(u8, u8)]) {
        (self.r, self.n, self.edges.len(), &self.edges)
    }
}

impl PartialOrd for LabeledGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LabeledGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g r={} n={} e={} :", self.r, self.n, self.edges.len())?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{a}-{b}")?;
        }
        Ok(())
    }
}

impl FromStr for LabeledGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Parse(s.to_string());
        let s = s.trim();
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        let mut parts = head.split_whitespace();
        if parts.next() != Some("g") {
            return Err(bad());
        }
        let mut field = |name: &str| -> Result<usize, GraphError> {
            let p = parts.next().ok_or_else(bad)?;
            let v = p.strip_prefix(name).and_then(|x| x.strip_prefix('=')).ok_or_else(bad)?;
            v.parse().map_err(|_| bad())
        };
        let r = field("r")?;
        let n = field("n")?;
        let e = field("e")?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let mut edges = Vec::new();
        for item in tail.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (a, b) = item.split_once('-').ok_or_else(bad)?;
            edges.push((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
        }
        if edges.len() != e {
            return Err(bad());
        }
        LabeledGraph::new(r, n, edges)
    }
}

/// Relabels operational vertices: vertex `r + i` goes to `r + p(i)`.
pub fn act(p: &Permutation, g: &LabeledGraph) -> Result<LabeledGraph, GraphError> {
    if p.len() != g.n {
        return Err(GraphError::ArityMismatch { expected: g.n, got: p.len() });
    }
    let mut full: Vec<usize> = (1..=g.r).collect();
    full.extend(p.images().iter().map(|&x| x + g.r));
    Ok(g.relabel_all(&Permutation::from_images(full).expect("valid extension")))
}

/// Relabels neutral vertices by `p ∈ S_r`.
pub fn act_neutral(p: &Permutation, g: &LabeledGraph) -> Result<LabeledGraph, GraphError> {
    if p.len() != g.r {
        return Err(GraphError::ArityMismatch { expected: g.r, got: p.len() });
    }
    Ok(g.relabel_all(&p.extend(g.n)))
}

/// A canonical graph with the sign relating it to the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    pub graph: LabeledGraph,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// Outcome of [`canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Canonical {
    Zero,
    Signed(SignedGraph),
}

impl Canonical {
    pub fn is_zero(&self) -> bool {
        matches!(self, Canonical::Zero)
    }
}

/// Full information about the neutral-relabeling class of a graph, also for
/// odd graphs and graphs with repeated edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    /// Canonical representative (for a repeated edge, the input sorted).
    pub graph: LabeledGraph,
    /// Input equals `(-1)^sign_odd` times the representative, up to
    /// neutral relabeling.
    pub sign_odd: bool,
    /// The class vanishes: an odd symmetry or a repeated edge.
    pub odd: bool,
    pub multi_edge: bool,
    /// Order of the stabilizer in `S_r`.
    pub aut: u64,
}

pub fn class_info(g: &LabeledGraph) -> ClassInfo {
    let e0 = g.zero_based();
    match canon(g.num_vertices(), g.r, &[&e0]) {
        Some(CanonResult { lists, sign_odd, odd, aut }) => {
            let edges = lists.into_iter().next().unwrap_or_default().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
            ClassInfo { graph: LabeledGraph::from_raw(g.r, g.n, edges), sign_odd, odd, multi_edge: false, aut }
        }
        None => {
            let mut edges = g.edges.clone();
            edges.sort_unstable();
            ClassInfo { graph: LabeledGraph::from_raw(g.r, g.n, edges), sign_odd: false, odd: true, multi_edge: true, aut: 0 }
        }
    }
}

/// Canonical representative under neutral relabelings with edge-order sign;
/// `Zero` for r-odd graphs, including any graph with a repeated edge.
pub fn canonicalize(g: &LabeledGraph) -> Canonical {
    let info = class_info(g);
    if info.odd {
        Canonical::Zero
    } else {
        Canonical::Signed(SignedGraph { graph: info.graph, sign: if info.sign_odd { -1 } else { 1 } })
    }
}

/// Result of comparing two graphs up to neutral relabeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    EqualPlus,
    EqualMinus,
    Distinct,
}

pub fn is_isomorphic_signed(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<Isomorphism, GraphError> {
    let (c1, c2) = (canonicalize(g1), canonicalize(g2));
    match (c1, c2) {
        (Canonical::Signed(a), Canonical::Signed(b)) => Ok(if a.graph != b.graph {
            Isomorphism::Distinct
        } else if a.sign == b.sign {
            Isomorphism::EqualPlus
        } else {
            Isomorphism::EqualMinus
        }),
        _ => Err(GraphError::OddGraph),
    }
}

/// Connected components of a vertex set under the given 1-based edges,
/// as sorted vertex lists ordered by smallest vertex.
pub fn components_of(nv: usize, edges: impl IntoIterator<Item = (u8, u8)>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        let (x, y) = (find(&mut parent, a as usize - 1), find(&mut parent, b as usize - 1));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; nv];
    for v in 0..nv {
        let root = find(&mut parent, v);
        if index[root] == usize::MAX {
            index[root] = comps.len();
            comps.push(Vec::new());
        }
        comps[index[root]].push(v + 1);
    }
    comps
}

pub fn connected_components(g: &LabeledGraph) -> Vec<Vec<usize>> {
    components_of(g.num_vertices(), g.edges.iter().copied())
}

pub fn is_connected(g: &LabeledGraph) -> bool {
    connected_components(g).len() == 1
}

pub fn euler_char(g: &LabeledGraph) -> i64 {
    g.euler_char()
}

/// Path graph on `l` vertices with edges `(1,2), (2,3), ...`, all neutral.
pub fn cable(l: usize) -> LabeledGraph {
    LabeledGraph::from_raw(l, 0, (1..l).map(|i| (i as u8, i as u8 + 1)).collect())
}

/// Cycle graph on `m ≥ 1` vertices with edges `(1,2), ..., (m-1,m), (1,m)`
/// (a loop for `m = 1`), all neutral.
pub fn polygon(m: usize) -> LabeledGraph {
    let mut edges: Vec<(u8, u8)> = (1..m).map(|i| (i as u8, i as u8 + 1)).collect();
    edges.push((1, m as u8));
    LabeledGraph::from_raw(m, 0, edges)
}

/// Complete graph on `k` neutral vertices, edges in lexicographic order.
pub fn complete(k: usize) -> LabeledGraph {
    let mut edges = Vec::new();
    for a in 1..=k as u8 {
        for b in a + 1..=k as u8 {
            edges.push((a, b));
        }
    }
    LabeledGraph::from_raw(k, 0, edges)
}
