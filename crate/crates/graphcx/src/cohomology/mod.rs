//! Finite slices of the graph complexes at fixed Euler characteristic and
//! their cohomology.
//!
//! Every space is represented inside an ambient space with a basis of
//! canonical graphs (orbit sums).  A basis of a slice degree is a list of
//! ambient vectors; for the graph complexes each is a single orbit, for the
//! convolution complexes they are rank-selected symmetrizations.

mod report;

pub use report::{slice_report, ReportFormat, ReportRow};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::complexes::{conv_mus, diff_connected_term, fgc_diff_prop, orbit_diff_term, tw_diff_gra, ComplexError};
use crate::ger::{basis as ger_basis, iota_mono, GerMono, Grading};
use crate::gra::{BiGraph, BiVec, FgcVec, GraVec};
use crate::graphs::{cable, class_info, enumerate_classes, enumerate_graphs_with_budget, is_connected, polygon, Constraints, GraphError, LabeledGraph};
use crate::qlinalg::{kernel_basis, primitive_integer_vector, rank, Echelon, LinalgError, Rational, SparseMat, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{vertices} vertices or {edges} edges exceed the budget of {max_vertices} vertices and {max_edges} edges")]
    BudgetExceeded { vertices: usize, edges: usize, max_vertices: usize, max_edges: usize },
    #[error("window [{lo}, {hi}] needs at least three degrees")]
    WindowTooShort { lo: i64, hi: i64 },
    #[error("degree {degree} is not an interior degree of the window [{lo}, {hi}]")]
    DegreeMismatch { degree: i64, lo: i64, hi: i64 },
    #[error("the differential leaves the subcomplex at degree {degree}")]
    NotASubcomplex { degree: i64 },
    #[error("basis element {label} violates the slice law: {detail}")]
    SliceLaw { label: String, detail: String },
    #[error("unknown complex {0}")]
    UnknownComplex(String),
}

/// The complexes that can be sliced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    Fgc,
    FgcConn,
    GcConn,
    GcNoloopConn,
    Cables,
    Polygons,
    /// Twisted graphs with the given number of operational vertices.
    TwGra(usize),
    ConvGra,
    ConvGraConn,
    ConvGer,
    ConvGerConn,
}

impl ComplexKind {
    /// Parses a complex name; `twgra` needs the operational arity.
    pub fn parse(name: &str, n: Option<usize>) -> Result<Self, CohomologyError> {
        Ok(match name {
            "fgc" => ComplexKind::Fgc,
            "fgc-conn" => ComplexKind::FgcConn,
            "gc-conn" => ComplexKind::GcConn,
            "gc-noloop-conn" => ComplexKind::GcNoloopConn,
            "cables" => ComplexKind::Cables,
            "polygons" => ComplexKind::Polygons,
            "twgra" => ComplexKind::TwGra(n.unwrap_or(0)),
            "conv-gra" => ComplexKind::ConvGra,
            "conv-gra-conn" => ComplexKind::ConvGraConn,
            "conv-ger" => ComplexKind::ConvGer,
            "conv-ger-conn" => ComplexKind::ConvGerConn,
            _ => return Err(CohomologyError::UnknownComplex(name.to_string())),
        })
    }

    /// The Euler characteristic forced by the complex, if any.
    pub fn forced_chi(self) -> Option<i64> {
        match self {
            ComplexKind::Cables => Some(1),
            ComplexKind::Polygons => Some(0),
            _ => None,
        }
    }

    pub fn is_conv(self) -> bool {
        matches!(self, ComplexKind::ConvGra | ComplexKind::ConvGraConn | ComplexKind::ConvGer | ComplexKind::ConvGerConn)
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexKind::Fgc => write!(f, "fgc"),
            ComplexKind::FgcConn => write!(f, "fgc-conn"),
            ComplexKind::GcConn => write!(f, "gc-conn"),
            ComplexKind::GcNoloopConn => write!(f, "gc-noloop-conn"),
            ComplexKind::Cables => write!(f, "cables"),
            ComplexKind::Polygons => write!(f, "polygons"),
            ComplexKind::TwGra(n) => write!(f, "twgra(n={n})"),
            ComplexKind::ConvGra => write!(f, "conv-gra"),
            ComplexKind::ConvGraConn => write!(f, "conv-gra-conn"),
            ComplexKind::ConvGer => write!(f, "conv-ger"),
            ComplexKind::ConvGerConn => write!(f, "conv-ger-conn"),
        }
    }
}

impl FromStr for ComplexKind {
    type Err = CohomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ComplexKind::parse(s, None)
    }
}

/// Extra subcomplex constraints on the graphs of a slice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    /// Every vertex has valence at least three.
    pub valence3: bool,
    pub noloop: bool,
    /// Every neutral vertex has valence at least three (twisted graphs).
    pub neutral_valence3: bool,
    /// No component made only of neutral vertices (twisted graphs).
    pub no_neutral_component: bool,
    /// Restricts a convolution slice to arity at least three.
    pub arity_at_least3: bool,
}

/// Size limits for slice assembly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub vertices: usize,
    pub edges: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { vertices: 9, edges: 14 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSpec {
    pub complex: ComplexKind,
    pub chi: i64,
    pub lo: i64,
    pub hi: i64,
    pub flags: Flags,
    pub budget: Budget,
}

impl SliceSpec {
    pub fn new(complex: ComplexKind, chi: i64, lo: i64, hi: i64) -> Self {
        SliceSpec { complex, chi: complex.forced_chi().unwrap_or(chi), lo, hi, flags: Flags::default(), budget: Budget::default() }
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

/// A canonical ambient basis key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Graph(LabeledGraph),
    Bi(BiGraph),
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Graph(g) => write!(f, "{g}"),
            Key::Bi(g) => write!(f, "{g}"),
        }
    }
}

/// An element of an ambient space in orbit coordinates.
pub type AmbientVec = BTreeMap<Key, Rational>;

/// One degree of a slice.
#[derive(Clone, Debug)]
pub struct DegreeSpace {
    pub degree: i64,
    /// Vertex count (arity) of the graphs in this degree.
    pub vertices: usize,
    pub edges: usize,
    pub labels: Vec<String>,
    pub vectors: Vec<AmbientVec>,
}

impl DegreeSpace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

#[derive(Clone, Debug)]
pub struct SliceComplex {
    pub spec: SliceSpec,
    /// Degrees `lo..=hi` in order.
    pub spaces: Vec<DegreeSpace>,
    /// `M_d: C^d -> C^{d+1}` in basis coordinates for `lo <= d < hi`.
    pub matrices: Vec<SparseMat>,
    /// The differential out of the top degree in ambient coordinates.
    pub top: SparseMat,
    /// Ambient keys indexing the rows of `top`.
    pub top_keys: Vec<Key>,
    /// Rank of the differential out of each degree.
    pub ranks: Vec<usize>,
}

/// Vertex and edge counts of degree `m` in a slice.
fn profile(kind: ComplexKind, chi: i64, m: i64) -> (i64, i64) {
    match kind {
        ComplexKind::TwGra(n) => {
            let n = n as i64;
            (2 * n + m - chi, 2 * (n - chi) + m)
        }
        _ => (m - chi + 2, m - 2 * chi + 2),
    }
}

fn single(key: Key) -> AmbientVec {
    BTreeMap::from([(key, Rational::one())])
}

fn fgc_constraints(kind: ComplexKind, flags: &Flags) -> Constraints {
    let connected = !matches!(kind, ComplexKind::Fgc);
    let gc = matches!(kind, ComplexKind::GcConn | ComplexKind::GcNoloopConn) || flags.valence3;
    Constraints {
        no_loops: matches!(kind, ComplexKind::GcNoloopConn) || flags.noloop,
        connected,
        min_valence: if gc { Some(3) } else { None },
        ..Constraints::default()
    }
}

fn check_budget(budget: &Budget, vertices: usize, edges: usize) -> Result<(), CohomologyError> {
    if vertices > budget.vertices || edges > budget.edges {
        return Err(CohomologyError::BudgetExceeded { vertices, edges, max_vertices: budget.vertices, max_edges: budget.edges });
    }
    Ok(())
}

fn empty_space(degree: i64) -> DegreeSpace {
    DegreeSpace { degree, vertices: 0, edges: 0, labels: Vec::new(), vectors: Vec::new() }
}

/// The basis of one degree of a slice.
pub fn degree_basis(spec: &SliceSpec, m: i64) -> Result<DegreeSpace, CohomologyError> {
    let (nv, e) = profile(spec.complex, spec.chi, m);
    if nv < 1 || e < 0 {
        return Ok(empty_space(m));
    }
    let (nv, e) = (nv as usize, e as usize);
    let mut space = DegreeSpace { degree: m, vertices: nv, edges: e, labels: Vec::new(), vectors: Vec::new() };
    match spec.complex {
        ComplexKind::Cables | ComplexKind::Polygons => {
            let g = if spec.complex == ComplexKind::Cables { cable(nv) } else { polygon(nv) };
            if g.num_edges() == e {
                let info = class_info(&g);
                if !info.odd && !(spec.flags.noloop && info.graph.has_loops()) {
                    space.labels.push(info.graph.to_string());
                    space.vectors.push(single(Key::Graph(info.graph)));
                }
            }
        }
        ComplexKind::Fgc | ComplexKind::FgcConn | ComplexKind::GcConn | ComplexKind::GcNoloopConn => {
            check_budget(&spec.budget, nv, e)?;
            let c = fgc_constraints(spec.complex, &spec.flags);
            for g in enumerate_graphs_with_budget(nv, 0, e, &c, spec.budget.vertices)? {
                space.labels.push(g.to_string());
                space.vectors.push(single(Key::Graph(g)));
            }
        }
        ComplexKind::TwGra(n) => {
            if nv < n {
                return Ok(space);
            }
            check_budget(&spec.budget, nv, e)?;
            let r = nv - n;
            let c = Constraints {
                no_loops: spec.flags.noloop,
                min_valence: if spec.flags.valence3 { Some(3) } else { None },
                neutral_min_valence: if spec.flags.neutral_valence3 { Some(3) } else { None },
                no_neutral_component: spec.flags.no_neutral_component,
                ..Constraints::default()
            };
            for g in enumerate_graphs_with_budget(r, n, e, &c, spec.budget.vertices)? {
                space.labels.push(g.to_string());
                space.vectors.push(single(Key::Graph(g)));
            }
        }
        ComplexKind::ConvGra | ComplexKind::ConvGraConn | ComplexKind::ConvGer | ComplexKind::ConvGerConn => {
            if spec.flags.arity_at_least3 && nv < 3 {
                return Ok(space);
            }
            check_budget(&spec.budget, nv, e)?;
            conv_basis(spec.complex, nv, e, spec.budget.vertices, &mut space)?;
        }
    }
    check_laws(spec, &space)?;
    Ok(space)
}

/// Products of right combs on consecutive blocks, one per partition of
/// `n` into `parts` sizes: their `S_n` translates span the monomials with
/// that many words.
fn block_combs(n: usize, parts: usize) -> Vec<GerMono> {
    fn rec(n: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in min..=n {
            cur.push(k);
            rec(n - k, parts - 1, k, cur, out);
            cur.pop();
        }
    }
    let mut sizes = Vec::new();
    rec(n, parts, 1, &mut Vec::new(), &mut sizes);
    sizes
        .into_iter()
        .map(|s| {
            let mut next = 1u8;
            let words = s
                .iter()
                .map(|&k| {
                    let w: Vec<u8> = (next..next + k as u8).collect();
                    next += k as u8;
                    w
                })
                .collect();
            GerMono::new(words)
        })
        .collect()
}

fn edge_lists_of(m: &GerMono) -> Vec<Vec<(u8, u8)>> {
    iota_mono(m)
}

fn sorted_signed(edges: &[(u8, u8)]) -> Option<(Vec<(u8, u8)>, bool)> {
    let odd = crate::graphs::sort_parity_odd(edges);
    let mut e = edges.to_vec();
    e.sort_unstable();
    if e.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((e, odd))
    }
}

/// Expanded left factors: each a list of signed solid edge lists.
struct LeftCandidate {
    label: String,
    terms: Vec<(Vec<(u8, u8)>, Rational)>,
    links: Vec<(u8, u8)>,
}

fn conv_basis(kind: ComplexKind, n: usize, e: usize, vertex_budget: usize, space: &mut DegreeSpace) -> Result<(), CohomologyError> {
    let connected = matches!(kind, ComplexKind::ConvGraConn | ComplexKind::ConvGerConn);
    let monos = ger_basis(n, Grading::Lambda2Ger);
    let mut candidates_all: Vec<(String, BiVec)> = Vec::new();
    for ed in 0..n.min(e + 1) {
        let t = n - ed;
        let es = e - ed;
        let lefts: Vec<LeftCandidate> = match kind {
            ComplexKind::ConvGra | ComplexKind::ConvGraConn => enumerate_classes(n, 0, es, false, vertex_budget)?
                .into_iter()
                .map(|c| LeftCandidate {
                    label: format!("[{}]", c.graph.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",")),
                    terms: vec![(c.graph.edges().to_vec(), Rational::one())],
                    links: c.graph.edges().to_vec(),
                })
                .collect(),
            _ => {
                if es > n - 1 {
                    continue;
                }
                block_combs(n, n - es)
                    .into_iter()
                    .map(|v| LeftCandidate {
                        label: format!("i({v})"),
                        terms: edge_lists_of(&v)
                            .into_iter()
                            .filter_map(|l| sorted_signed(&l).map(|(s, odd)| (s, Rational::sign(odd))))
                            .collect(),
                        links: v.words.iter().flat_map(|w| w.windows(2).map(|p| (p[0], p[1]))).collect(),
                    })
                    .collect()
            }
        };
        let rights: Vec<&GerMono> = monos.iter().filter(|w| w.word_count() == t).collect();
        let degree = 2 * n as i64 - e as i64 - 2;
        let pairs: Vec<(&LeftCandidate, &GerMono)> = lefts.iter().flat_map(|l| rights.iter().map(move |w| (l, *w))).collect();
        let cands: Vec<Option<(String, BiVec)>> = pairs
            .par_iter()
            .map(|&(l, w)| {
                let wlinks = w.words.iter().flat_map(|x| x.windows(2).map(|p| (p[0], p[1])));
                if connected && crate::graphs::components_of(n, l.links.iter().copied().chain(wlinks)).len() != 1 {
                    return None;
                }
                let mut v = BiVec::zero(degree);
                let dashed: Vec<(Vec<(u8, u8)>, bool)> = edge_lists_of(w).iter().filter_map(|d| sorted_signed(d)).collect();
                for (solid, c) in &l.terms {
                    for (d, odd) in &dashed {
                        v.add_av(&BiGraph::new(n, solid.clone(), d.clone()).expect("valid"), &c.signed(*odd));
                    }
                }
                if v.is_zero() {
                    None
                } else {
                    Some((format!("Av({} (x) i({w}))", l.label), v))
                }
            })
            .collect();
        candidates_all.extend(cands.into_iter().flatten());
    }
    let mut index: HashMap<BiGraph, usize> = HashMap::new();
    let mut ech = Echelon::new(false);
    for (label, v) in candidates_all {
        let sv = sparse_of(&mut index, v.terms().iter().map(|(k, c)| (k.clone(), c.clone())));
        if ech.insert(&sv) {
            space.labels.push(label);
            space.vectors.push(v.terms().iter().map(|(k, c)| (Key::Bi(k.clone()), c.clone())).collect());
        }
    }
    Ok(())
}

fn sparse_of<K: std::hash::Hash + Eq>(index: &mut HashMap<K, usize>, items: impl Iterator<Item = (K, Rational)>) -> SparseVec {
    let mut out: Vec<(usize, Rational)> = items
        .map(|(k, c)| {
            let next = index.len();
            (*index.entry(k).or_insert(next), c)
        })
        .collect();
    out.sort_by_key(|e| e.0);
    out
}

fn check_laws(spec: &SliceSpec, space: &DegreeSpace) -> Result<(), CohomologyError> {
    let (m, chi) = (space.degree, spec.chi);
    for (label, v) in space.labels.iter().zip(&space.vectors) {
        for key in v.keys() {
            let detail = match (spec.complex, key) {
                (ComplexKind::TwGra(n), Key::Graph(g)) => {
                    let (r, e) = (g.r_neutral() as i64, g.num_edges() as i64);
                    let n = n as i64;
                    (e != 2 * (n - chi) + m || r != n + m - chi).then(|| format!("r={r} e={e} for m={m} chi={chi}"))
                }
                (_, Key::Graph(g)) => {
                    let (nv, e) = (g.num_vertices() as i64, g.num_edges() as i64);
                    (nv != m - chi + 2 || e != m - 2 * chi + 2).then(|| format!("n={nv} e={e} for m={m} chi={chi}"))
                }
                (_, Key::Bi(g)) => {
                    let nv = g.num_vertices() as i64;
                    let e = (g.solid().len() + g.dashed().len()) as i64;
                    (nv != m - chi + 2 || e != m - 2 * chi + 2).then(|| format!("n={nv} e={e} for m={m} chi={chi}"))
                }
            };
            if let Some(detail) = detail {
                return Err(CohomologyError::SliceLaw { label: label.clone(), detail });
            }
        }
    }
    Ok(())
}

/// The differential of an ambient vector of a slice.
pub fn ambient_diff(kind: ComplexKind, v: &AmbientVec) -> AmbientVec {
    let mut out: AmbientVec = BTreeMap::new();
    let mut add = |k: Key, c: &Rational| {
        let slot = out.entry(k.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            out.remove(&k);
        }
    };
    for (key, c) in v {
        match (kind, key) {
            (ComplexKind::TwGra(_), Key::Graph(g)) => {
                let x = GraVec::orbit(g);
                for (k, d) in tw_diff_gra(&x).terms() {
                    add(Key::Graph(k.clone()), &(d * c));
                }
            }
            (_, Key::Graph(g)) => {
                let img = if g.num_edges() > 0 && is_connected(g) {
                    diff_connected_term(g, &Rational::one(), crate::gra::fgc_degree(g.num_vertices(), g.num_edges()) + 1)
                } else {
                    fgc_diff_prop(&FgcVec::orbit(g))
                };
                for (k, d) in img.terms() {
                    add(Key::Graph(k.clone()), &(d * c));
                }
            }
            (_, Key::Bi(g)) => {
                for (k, d) in orbit_diff_term(g, &conv_mus()).terms() {
                    add(Key::Bi(k.clone()), &(d * c));
                }
            }
        }
    }
    out
}

/// Differentials of the basis vectors of a degree, computing the
/// differential of each distinct ambient orbit once.
pub fn space_images(kind: ComplexKind, space: &DegreeSpace) -> Vec<AmbientVec> {
    let mut keys: Vec<&Key> = space.vectors.iter().flat_map(|v| v.keys()).collect();
    keys.sort();
    keys.dedup();
    let diffs: Vec<AmbientVec> = keys.par_iter().map(|k| ambient_diff(kind, &single((*k).clone()))).collect();
    let table: HashMap<&Key, &AmbientVec> = keys.iter().copied().zip(diffs.iter()).collect();
    space
        .vectors
        .par_iter()
        .map(|v| {
            let mut out: AmbientVec = BTreeMap::new();
            for (k, c) in v {
                for (k2, d) in table[k] {
                    let slot = out.entry(k2.clone()).or_insert_with(Rational::zero);
                    *slot += &(c * d);
                    if slot.is_zero() {
                        out.remove(k2);
                    }
                }
            }
            out
        })
        .collect()
}

/// Coordinates of ambient vectors in a degree space, or `None` when some
/// vector is outside its span.
struct Coordinates {
    index: HashMap<Key, usize>,
    ech: Option<Echelon>,
}

impl Coordinates {
    fn new(space: &DegreeSpace) -> Self {
        let mut index: HashMap<Key, usize> = HashMap::new();
        let singles = space.vectors.iter().all(|v| v.len() == 1 && v.values().next().is_some_and(|c| *c == Rational::one()));
        if singles {
            for (i, v) in space.vectors.iter().enumerate() {
                index.insert(v.keys().next().expect("single").clone(), i);
            }
            return Coordinates { index, ech: None };
        }
        let mut ech = Echelon::new(true);
        for v in &space.vectors {
            let sv = sparse_of(&mut index, v.iter().map(|(k, c)| (k.clone(), c.clone())));
            let fresh = ech.insert(&sv);
            debug_assert!(fresh, "basis vectors are independent");
        }
        Coordinates { index, ech: Some(ech) }
    }

    fn express(&self, v: &AmbientVec) -> Option<SparseVec> {
        match &self.ech {
            None => {
                let mut out: Vec<(usize, Rational)> = Vec::with_capacity(v.len());
                for (k, c) in v {
                    out.push((*self.index.get(k)?, c.clone()));
                }
                out.sort_by_key(|e| e.0);
                Some(out)
            }
            Some(ech) => {
                let mut sv = Vec::with_capacity(v.len());
                for (k, c) in v {
                    sv.push((*self.index.get(k)?, c.clone()));
                }
                sv.sort_by_key(|e| e.0);
                ech.express(&sv)
            }
        }
    }
}

/// Builds the bases, the differential matrices and their ranks, and checks
/// that consecutive differentials compose to zero.
pub fn build_slice(spec: &SliceSpec) -> Result<SliceComplex, CohomologyError> {
    if spec.hi - spec.lo < 2 {
        return Err(CohomologyError::WindowTooShort { lo: spec.lo, hi: spec.hi });
    }
    let spaces: Vec<DegreeSpace> = (spec.lo..=spec.hi).map(|m| degree_basis(spec, m)).collect::<Result<_, _>>()?;
    let mut matrices = Vec::new();
    let mut ranks = Vec::new();
    for (i, space) in spaces.iter().enumerate() {
        let images = space_images(spec.complex, space);
        if i + 1 < spaces.len() {
            let target = &spaces[i + 1];
            let coords = Coordinates::new(target);
            let cols: Vec<SparseVec> = images
                .par_iter()
                .map(|img| coords.express(img))
                .collect::<Option<Vec<_>>>()
                .ok_or(CohomologyError::NotASubcomplex { degree: space.degree })?;
            let m = SparseMat::from_columns(target.dim(), cols);
            ranks.push(rank(&m));
            matrices.push(m);
        } else {
            let mut keys: Vec<Key> = images.iter().flat_map(|v| v.keys().cloned()).collect();
            keys.sort();
            keys.dedup();
            let index: HashMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
            let cols: Vec<SparseVec> =
                images.iter().map(|v| v.iter().map(|(k, c)| (index[k], c.clone())).collect()).collect();
            let top = SparseMat::from_columns(keys.len(), cols);
            ranks.push(rank(&top));
            for w in matrices.windows(2) {
                check_zero(&w[1], &w[0])?;
            }
            if let Some(last) = matrices.last() {
                check_zero(&top, last)?;
            }
            return Ok(SliceComplex { spec: spec.clone(), spaces, matrices, top, top_keys: keys, ranks });
        }
    }
    unreachable!("the window is nonempty")
}

fn check_zero(outer: &SparseMat, inner: &SparseMat) -> Result<(), CohomologyError> {
    let p = outer.mul(inner)?;
    if !p.is_zero() {
        return Err(LinalgError::CompositionNonzero { nnz: p.nnz() }.into());
    }
    Ok(())
}

impl SliceComplex {
    fn position(&self, d: i64) -> Result<usize, CohomologyError> {
        if d <= self.spec.lo || d > self.spec.hi {
            return Err(CohomologyError::DegreeMismatch { degree: d, lo: self.spec.lo, hi: self.spec.hi });
        }
        Ok((d - self.spec.lo) as usize)
    }

    pub fn space(&self, d: i64) -> Option<&DegreeSpace> {
        if d < self.spec.lo || d > self.spec.hi {
            return None;
        }
        self.spaces.get((d - self.spec.lo) as usize)
    }

    /// Rank of the differential into degree `d`, when the window has it.
    pub fn rank_in(&self, d: i64) -> Option<usize> {
        if d <= self.spec.lo || d > self.spec.hi {
            return None;
        }
        Some(self.ranks[(d - self.spec.lo - 1) as usize])
    }

    pub fn rank_out(&self, d: i64) -> Option<usize> {
        if d < self.spec.lo || d > self.spec.hi {
            return None;
        }
        Some(self.ranks[(d - self.spec.lo) as usize])
    }

    /// The matrix of the differential out of degree `d`, with rows in
    /// the basis of `d + 1` (or ambient keys at the top degree).
    pub fn matrix_out(&self, d: i64) -> Option<&SparseMat> {
        if d < self.spec.lo || d > self.spec.hi {
            return None;
        }
        let i = (d - self.spec.lo) as usize;
        Some(if i < self.matrices.len() { &self.matrices[i] } else { &self.top })
    }
}

/// `dim C^d - rank_in - rank_out` for `lo < d <= hi`.
pub fn h_dim(slice: &SliceComplex, d: i64) -> Result<usize, CohomologyError> {
    let i = slice.position(d)?;
    Ok(slice.spaces[i].dim() - slice.ranks[i] - slice.ranks[i - 1])
}

/// Cohomology representatives at degree `d` as primitive integer
/// combinations of the basis vectors: kernel vectors of the outgoing
/// differential that are independent modulo the image of the incoming one.
pub fn representative(slice: &SliceComplex, d: i64) -> Result<Vec<SparseVec>, CohomologyError> {
    let i = slice.position(d)?;
    let out = slice.matrix_out(d).expect("in window");
    let inc = &slice.matrices[i - 1];
    let mut ech = Echelon::new(false);
    for col in inc.columns() {
        ech.insert(col);
    }
    let mut reps = Vec::new();
    for k in kernel_basis(out) {
        let sv: SparseVec = k.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect();
        if ech.insert(&sv) {
            let p = primitive_integer_vector(&k);
            reps.push(p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect());
        }
    }
    Ok(reps)
}

/// The ambient vector of a combination of basis vectors of degree `d`.
pub fn combination(slice: &SliceComplex, d: i64, coeffs: &[(usize, Rational)]) -> AmbientVec {
    let space = slice.space(d).expect("degree in window");
    let mut out: AmbientVec = BTreeMap::new();
    for (j, c) in coeffs {
        for (k, x) in &space.vectors[*j] {
            let slot = out.entry(k.clone()).or_insert_with(Rational::zero);
            *slot += &(c * x);
            if slot.is_zero() {
                out.remove(k);
            }
        }
    }
    out
}

/// Whether an fGC element is closed.
pub fn verify_cocycle(x: &FgcVec) -> bool {
    fgc_diff_prop(x).is_zero()
}

/// Whether an ambient vector of degree `d` is closed in its complex.
pub fn verify_cocycle_ambient(kind: ComplexKind, x: &AmbientVec) -> bool {
    ambient_diff(kind, x).is_empty()
}

/// Whether `x`, of degree `d` in the slice, is the differential of an
/// element of degree `d - 1`.
pub fn verify_exact(x: &AmbientVec, d: i64, slice: &SliceComplex) -> Result<bool, CohomologyError> {
    let i = slice.position(d)?;
    let coords = Coordinates::new(&slice.spaces[i]);
    let Some(v) = coords.express(x) else { return Ok(false) };
    let mut ech = Echelon::new(false);
    for col in slice.matrices[i - 1].columns() {
        ech.insert(col);
    }
    Ok(ech.contains(&v))
}

/// An fGC element as an ambient vector.
pub fn fgc_ambient(x: &FgcVec) -> AmbientVec {
    x.terms().iter().map(|(k, c)| (Key::Graph(k.clone()), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gra::av;
    use crate::graphs::complete;

    #[test]
    fn graph_slices() {
        let s = build_slice(&SliceSpec::new(ComplexKind::GcNoloopConn, -2, -1, 1)).unwrap();
        assert_eq!(h_dim(&s, 0).unwrap(), 1);
        let reps = representative(&s, 0).unwrap();
        assert_eq!(reps.len(), 1);
        let tet = fgc_ambient(&av(&complete(4)));
        assert!(verify_cocycle(&av(&complete(4))));
        assert!(!verify_exact(&tet, 0, &s).unwrap());
        let rep = combination(&s, 0, &reps[0]);
        assert_eq!(rep.len(), 1);
        assert_eq!(rep.keys().next(), tet.keys().next());
    }

    #[test]
    fn small_complexes() {
        let cables = build_slice(&SliceSpec::new(ComplexKind::Cables, 1, -1, 9)).unwrap();
        for d in 0..=9 {
            assert_eq!(h_dim(&cables, d).unwrap(), 0, "cables degree {d}");
        }
        let poly = build_slice(&SliceSpec::new(ComplexKind::Polygons, 0, 2, 4)).unwrap();
        assert_eq!(poly.space(3).unwrap().dim(), 1);
        assert_eq!(h_dim(&poly, 3).unwrap(), 1);
        let c = build_slice(&SliceSpec::new(ComplexKind::ConvGra, 1, 0, 2)).unwrap();
        assert_eq!(h_dim(&c, 1).unwrap(), 1);
    }

    #[test]
    fn fgc_point_degree() {
        let s = degree_basis(&SliceSpec::new(ComplexKind::Fgc, 1, -1, 1), 0).unwrap();
        assert!(s.labels.iter().any(|l| l == &LabeledGraph::edgeless(1, 0).to_string()));
    }

    #[test]
    fn window_length() {
        assert!(matches!(
            build_slice(&SliceSpec::new(ComplexKind::Fgc, 1, 0, 1)),
            Err(CohomologyError::WindowTooShort { .. })
        ));
    }
}
