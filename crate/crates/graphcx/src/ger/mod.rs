//! The operad Ger: monomials in the comb normal basis, normalization by the
//! Gerstenhaber relations, insertions with Koszul signs, the `Λ⁻²` grading,
//! and the embedding ι into Gra.
//!
//! A Lie word is stored as the index sequence `[i_1, ..., i_p]` of the
//! right comb `{i_1, {i_2, ... {i_{p-1}, i_p}}}`; in normal form `i_p` is
//! the largest index.  A word of length `p` has degree `1 - p` and the
//! bracket obeys `{x, y} = (-1)^{|x||y|} {y, x}`.

mod expr;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use expr::Expr;

use crate::gra::GraVec;
use crate::graphs::{GraphError, LabeledGraph, Permutation};
use crate::qlinalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GerError {
    #[error("malformed expression: {0}")]
    MalformedExpression(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("grading mismatch between operands")]
    KindMismatch,
}

/// Plain Ger or its double desuspension `Λ⁻²Ger`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grading {
    Ger,
    Lambda2Ger,
}

impl Grading {
    /// The `lambda_power` attached to this grading.
    pub fn lambda_power(self) -> i32 {
        match self {
            Grading::Ger => 0,
            Grading::Lambda2Ger => -2,
        }
    }
}

/// A comb Lie word `{i_1, {i_2, ... }}` given by its indices.
pub type Word = Vec<u8>;

fn word_odd(w: &[u8]) -> bool {
    (w.len() - 1) % 2 == 1
}

fn words_odd(ws: &[Word]) -> bool {
    ws.iter().fold(false, |acc, w| acc ^ word_odd(w))
}

/// A Gerstenhaber monomial: a product of Lie words partitioning `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GerMono {
    pub words: Vec<Word>,
}

impl GerMono {
    pub fn new(words: Vec<Word>) -> Self {
        GerMono { words }
    }

    pub fn arity(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    /// Number of words.
    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn degree(&self, grading: Grading) -> i64 {
        let (n, t) = (self.arity() as i64, self.words.len() as i64);
        match grading {
            Grading::Ger => t - n,
            Grading::Lambda2Ger => n + t - 2,
        }
    }

    /// Parity of the degree (the same for both gradings).
    pub fn is_odd(&self) -> bool {
        words_odd(&self.words)
    }

    /// Normal form: each word is a comb ending in its maximum and words are
    /// sorted by their maxima.
    pub fn is_basis(&self) -> bool {
        self.words.iter().all(|w| w.iter().max() == w.last())
            && self.words.windows(2).all(|p| p[0].last() < p[1].last())
    }

    pub fn to_expr(&self) -> Expr {
        Expr::Prod(self.words.iter().map(|w| Expr::comb(w)).collect())
    }
}

/// Number of words of length one.
pub fn lie_len1_count(m: &GerMono) -> usize {
    m.words.iter().filter(|w| w.len() == 1).count()
}

fn fmt_word(w: &[u8], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if w.len() == 1 {
        return write!(f, "{}", w[0]);
    }
    write!(f, "{{{},", w[0])?;
    fmt_word(&w[1..], f)?;
    write!(f, "}}")
}

impl fmt::Display for GerMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            fmt_word(w, f)?;
        }
        Ok(())
    }
}

impl FromStr for GerMono {
    type Err = GerError;

    /// Parses a product of comb words written in normal form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let e: Expr = s.parse()?;
        let factors = match e {
            Expr::Prod(fs) => fs,
            other => vec![other],
        };
        let mut words = Vec::new();
        for f in factors {
            words.push(f.as_comb().ok_or_else(|| GerError::MalformedExpression(s.to_string()))?);
        }
        let m = GerMono::new(words);
        check_partition(&m.words, m.arity()).map_err(|_| GerError::MalformedExpression(s.to_string()))?;
        Ok(m)
    }
}

fn check_partition(words: &[Word], n: usize) -> Result<(), GerError> {
    let mut seen = vec![false; n];
    for w in words {
        for &x in w {
            let x = x as usize;
            if x == 0 || x > n || seen[x - 1] {
                return Err(GerError::MalformedExpression(format!("generator {x} repeated or out of range")));
            }
            seen[x - 1] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GerError::MalformedExpression("missing generator".into()));
    }
    Ok(())
}

/// A homogeneous combination of basis monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GerVec {
    n: usize,
    grading: Grading,
    degree: i64,
    terms: BTreeMap<GerMono, Rational>,
}

impl GerVec {
    pub fn zero(n: usize, grading: Grading, degree: i64) -> Self {
        GerVec { n, grading, degree, terms: BTreeMap::new() }
    }

    /// A single basis monomial with coefficient one.
    pub fn basis_element(m: GerMono, grading: Grading) -> Self {
        assert!(m.is_basis(), "{m} is not in normal form");
        let mut v = GerVec::zero(m.arity(), grading, m.degree(grading));
        v.terms.insert(m, Rational::one());
        v
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<GerMono, Rational> {
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

    pub fn coefficient(&self, m: &GerMono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c` at a basis monomial.
    pub fn add_basis(&mut self, m: GerMono, c: &Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.is_basis());
        assert!(m.arity() == self.n && m.degree(self.grading) == self.degree, "monomial {m} does not fit");
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &GerVec, s: &Rational) {
        assert!(other.is_zero() || (other.n, other.grading, other.degree) == (self.n, self.grading, self.degree));
        for (m, c) in &other.terms {
            self.add_basis(m.clone(), &(c * s));
        }
    }

    pub fn scaled(&self, s: &Rational) -> GerVec {
        let mut out = GerVec::zero(self.n, self.grading, self.degree);
        out.add_scaled(self, s);
        out
    }

    /// The same coefficients with the other grading.
    pub fn regraded(&self, grading: Grading) -> GerVec {
        let degree = match (self.grading, grading) {
            (a, b) if a == b => self.degree,
            (Grading::Ger, _) => self.degree + 2 * self.n as i64 - 2,
            _ => self.degree - 2 * self.n as i64 + 2,
        };
        GerVec { n: self.n, grading, degree, terms: self.terms.clone() }
    }

    /// Adds `c` times an arbitrary product of arbitrary comb words.
    fn add_raw(&mut self, words: &[Word], c: &Rational) {
        for (m, s) in normalize_words(words) {
            self.add_basis(m, &c.signed(s < 0));
        }
    }
}

impl fmt::Display for GerVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.grading {
            Grading::Ger => "ger",
            Grading::Lambda2Ger => "ger2",
        };
        writeln!(f, "gervec kind={kind} n={} deg={}", self.n, self.degree)?;
        for (m, c) in &self.terms {
            writeln!(f, "{c} * {m}")?;
        }
        Ok(())
    }
}

impl FromStr for GerVec {
    type Err = GerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |x: &str| GerError::MalformedExpression(x.to_string());
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| bad("empty input"))?;
        let mut parts = head.split_whitespace();
        if parts.next() != Some("gervec") {
            return Err(bad(head));
        }
        let grading = match parts.next() {
            Some("kind=ger") => Grading::Ger,
            Some("kind=ger2") => Grading::Lambda2Ger,
            _ => return Err(bad(head)),
        };
        let rest: Vec<&str> = parts.collect();
        let h = crate::gra::parse_header_fields(&format!("h {}", rest.join(" ")), "h", &["n", "deg"]).map_err(|e| bad(&e))?;
        let mut v = GerVec::zero(h[0].max(0) as usize, grading, h[1]);
        for line in lines {
            let (c, rest) = crate::gra::split_term(line).map_err(|e| bad(&e))?;
            let e: Expr = rest.parse()?;
            let w = normalize_with(&e, v.n, grading)?;
            if !w.is_zero() && w.degree != v.degree {
                return Err(bad(line));
            }
            v.add_scaled(&w, &c);
        }
        Ok(v)
    }
}

/// `{x, c}` for comb words where the overall maximum sits at the end of
/// `c`.  Returns normal-form words with signs.
fn bracket_into(x: &[u8], c: &[u8], out: &mut Vec<(Word, i32)>, sign: i32) {
    if x.len() == 1 {
        let mut w = Vec::with_capacity(1 + c.len());
        w.push(x[0]);
        w.extend_from_slice(c);
        out.push((w, sign));
        return;
    }
    // {{x0, x'}, c} = -{x0, {x', c}} - (-1)^{|x'|} {x', {x0, c}}
    let (x0, rest) = (x[0], &x[1..]);
    let mut inner = Vec::new();
    bracket_into(rest, c, &mut inner, 1);
    for (w, s) in inner {
        let mut v = Vec::with_capacity(1 + w.len());
        v.push(x0);
        v.extend(w);
        out.push((v, -sign * s));
    }
    let mut c2 = Vec::with_capacity(1 + c.len());
    c2.push(x0);
    c2.extend_from_slice(c);
    let s2 = if word_odd(rest) { sign } else { -sign };
    bracket_into(rest, &c2, out, s2);
}

/// `{p, q}` for normal-form words.
fn bracket_words(p: &[u8], q: &[u8]) -> Vec<(Word, i32)> {
    let mut out = Vec::new();
    if q.last() > p.last() {
        bracket_into(p, q, &mut out, 1);
    } else {
        let s = if word_odd(p) && word_odd(q) { -1 } else { 1 };
        bracket_into(q, p, &mut out, s);
    }
    out
}

/// `{P, Q}` for products of normal-form words, expanded by the Leibniz
/// rule into products of normal-form words (unsorted).
fn bracket_monos(p: &[Word], q: &[Word]) -> Vec<(Vec<Word>, i32)> {
    if q.len() >= 2 {
        // {P, q1 Q'} = {P, q1} Q' + (-1)^{|q1|(|P|+1)} q1 {P, Q'}
        let (q1, rest) = (&q[..1], &q[1..]);
        let mut out = Vec::new();
        for (mut m, s) in bracket_monos(p, q1) {
            m.extend_from_slice(rest);
            out.push((m, s));
        }
        let s2 = if word_odd(&q1[0]) && !words_odd(p) { -1 } else { 1 };
        for (m, s) in bracket_monos(p, rest) {
            let mut v = vec![q1[0].clone()];
            v.extend(m);
            out.push((v, s * s2));
        }
        return out;
    }
    if p.len() >= 2 {
        let s = if words_odd(p) && words_odd(q) { -1 } else { 1 };
        return bracket_monos(q, p).into_iter().map(|(m, t)| (m, s * t)).collect();
    }
    bracket_words(&p[0], &q[0]).into_iter().map(|(w, s)| (vec![w], s)).collect()
}

/// Sorts normal-form words by maximum with Koszul signs.
fn sort_words(mut words: Vec<Word>) -> (Vec<Word>, i32) {
    let mut sign = 1;
    for i in 1..words.len() {
        let mut j = i;
        while j > 0 && words[j - 1].last() > words[j].last() {
            if word_odd(&words[j - 1]) && word_odd(&words[j]) {
                sign = -sign;
            }
            words.swap(j - 1, j);
            j -= 1;
        }
    }
    (words, sign)
}

/// Normal-form expansion of a single arbitrary comb word.
fn normalize_comb(w: &[u8]) -> Vec<(Word, i32)> {
    if w.len() == 1 {
        return vec![(w.to_vec(), 1)];
    }
    let mut out = Vec::new();
    for (tail, s) in normalize_comb(&w[1..]) {
        for (v, t) in bracket_words(&w[..1], &tail) {
            out.push((v, s * t));
        }
    }
    out
}

/// Normal form of a product of arbitrary comb words.
fn normalize_words(words: &[Word]) -> Vec<(GerMono, i32)> {
    let mut acc: Vec<(Vec<Word>, i32)> = vec![(Vec::new(), 1)];
    for w in words {
        let expansion = normalize_comb(w);
        let mut next = Vec::with_capacity(acc.len() * expansion.len());
        for (m, s) in &acc {
            for (v, t) in &expansion {
                let mut m2 = m.clone();
                m2.push(v.clone());
                next.push((m2, s * t));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(m, s)| {
            let (sorted, t) = sort_words(m);
            (GerMono::new(sorted), s * t)
        })
        .collect()
}

type Raw = Vec<(Vec<Word>, Rational)>;

fn eval(e: &Expr) -> Raw {
    match e {
        Expr::Gen(i) => vec![(vec![vec![*i]], Rational::one())],
        Expr::Prod(fs) => {
            let mut acc: Raw = vec![(Vec::new(), Rational::one())];
            for f in fs {
                let rhs = eval(f);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for (m, c) in &acc {
                    for (m2, c2) in &rhs {
                        let mut v = m.clone();
                        v.extend(m2.iter().cloned());
                        next.push((v, c * c2));
                    }
                }
                acc = next;
            }
            acc
        }
        Expr::Br(a, b) => {
            let (x, y) = (eval(a), eval(b));
            let mut out = Vec::new();
            for (m1, c1) in &x {
                for (m2, c2) in &y {
                    let c = c1 * c2;
                    for (m, s) in bracket_monos(m1, m2) {
                        out.push((m, c.signed(s < 0)));
                    }
                }
            }
            out
        }
    }
}

/// Rewrites an expression in the comb normal basis of Ger.
pub fn normalize(e: &Expr) -> Result<GerVec, GerError> {
    normalize_with(e, e.arity(), Grading::Ger)
}

/// As [`normalize`] with a chosen grading and expected arity.
pub fn normalize_with(e: &Expr, n: usize, grading: Grading) -> Result<GerVec, GerError> {
    let gens = e.generators();
    let mut sorted = gens.clone();
    sorted.sort_unstable();
    if sorted != (1..=n as u8).collect::<Vec<_>>() {
        return Err(GerError::MalformedExpression(format!("{e}: generators must be exactly 1..={n}")));
    }
    let t = e.degree_ger() + n as i64;
    let degree = match grading {
        Grading::Ger => t - n as i64,
        Grading::Lambda2Ger => n as i64 + t - 2,
    };
    let mut v = GerVec::zero(n, grading, degree);
    for (words, c) in eval(e) {
        v.add_raw(&words, &c);
    }
    Ok(v)
}

/// The comb basis of `Ger(n)` in lexicographic order of the words.
pub fn basis(n: usize, _grading: Grading) -> Vec<GerMono> {
    fn rec(remaining: Vec<u8>, current: &mut Vec<Word>, out: &mut Vec<GerMono>) {
        if remaining.is_empty() {
            let mut words = current.clone();
            words.sort_by_key(|w| *w.last().expect("nonempty word"));
            out.push(GerMono::new(words));
            return;
        }
        // Choose the word containing the smallest remaining index; it ends
        // in its maximum and the other letters come in any order.
        let first = remaining[0];
        let others: Vec<u8> = remaining[1..].to_vec();
        let k = others.len();
        for mask in 0u32..(1 << k) {
            let mut block = vec![first];
            let mut rest = Vec::new();
            for (j, &x) in others.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    block.push(x);
                } else {
                    rest.push(x);
                }
            }
            let max = *block.iter().max().expect("nonempty");
            let mut front: Vec<u8> = block.iter().copied().filter(|&x| x != max).collect();
            front.sort_unstable();
            for perm in crate::graphs::all_permutations(front.len()) {
                let mut w: Word = perm.images().iter().map(|&p| front[p - 1]).collect();
                w.push(max);
                current.push(w);
                rec(rest.clone(), current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec((1..=n as u8).collect(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `((-1)^{(1-k)(n-i)})^{|power|}`.
pub fn lambda_sign(n: usize, k: usize, i: usize, power: i32) -> Rational {
    let exp = (1 - k as i64) * (n as i64 - i as i64) * power.abs() as i64;
    Rational::sign(exp.rem_euclid(2) == 1)
}

/// Number of bracket openings to the right of generator `i` in the written
/// form of `m`.
fn openings_after(m: &GerMono, i: u8) -> usize {
    let mut count = 0;
    let mut found = false;
    for w in &m.words {
        if found {
            count += w.len() - 1;
            continue;
        }
        if let Some(j) = w.iter().position(|&x| x == i) {
            found = true;
            if j + 2 <= w.len() {
                count += w.len() - 2 - j;
            }
        }
    }
    count
}

fn insert_mono(v: &GerMono, i: usize, w: &GerMono, out: &mut GerVec, c: &Rational) {
    let k = w.arity() as u8;
    let i8 = i as u8;
    let sign_odd = w.is_odd() && openings_after(v, i8) % 2 == 1;
    let relabel = |x: u8| if x < i8 { x } else { x + k - 1 };
    let inner = Expr::Prod(w.words.iter().map(|ws| Expr::comb(&ws.iter().map(|&l| l + i8 - 1).collect::<Vec<_>>())).collect());
    let factors: Vec<Expr> = v
        .words
        .iter()
        .map(|word| {
            if word.contains(&i8) {
                comb_with(word, i8, &inner, &relabel)
            } else {
                Expr::comb(&word.iter().map(|&x| relabel(x)).collect::<Vec<_>>())
            }
        })
        .collect();
    let e = Expr::Prod(factors);
    let c = c.signed(sign_odd);
    for (words, d) in eval(&e) {
        out.add_raw(&words, &(&c * d));
    }
}

fn comb_with(word: &[u8], i: u8, inner: &Expr, relabel: &dyn Fn(u8) -> u8) -> Expr {
    let leaf = |x: u8| if x == i { inner.clone() } else { Expr::Gen(relabel(x)) };
    let mut e = leaf(*word.last().expect("nonempty"));
    for &x in word[..word.len() - 1].iter().rev() {
        e = Expr::Br(Box::new(leaf(x)), Box::new(e));
    }
    e
}

/// `v ∘_i w` in Ger.
pub fn insert_ger(v: &GerVec, i: usize, w: &GerVec) -> Result<GerVec, GerError> {
    if v.grading != w.grading {
        return Err(GerError::KindMismatch);
    }
    if i == 0 || i > v.n {
        return Err(GraphError::IndexOutOfRange { index: i, bound: v.n }.into());
    }
    let n = v.n + w.n - 1;
    let mut out = GerVec::zero(n, v.grading, v.degree + w.degree);
    for (a, ca) in &v.terms {
        for (b, cb) in &w.terms {
            insert_mono(a, i, b, &mut out, &(ca * cb));
        }
    }
    Ok(out)
}

/// `v ∘_i w` in `Λ⁻²Ger`: the Ger insertion times the square of the Λ sign,
/// which is always one.
pub fn insert_lambda2ger(v: &GerVec, i: usize, w: &GerVec) -> Result<GerVec, GerError> {
    if v.grading != Grading::Lambda2Ger || w.grading != Grading::Lambda2Ger {
        return Err(GerError::KindMismatch);
    }
    let s = lambda_sign(v.n, w.n, i, -2);
    Ok(insert_ger(v, i, w)?.scaled(&s))
}

/// Relabels generators `j -> p(j)` and renormalizes.
pub fn sym_act(p: &Permutation, v: &GerVec) -> Result<GerVec, GerError> {
    if p.len() != v.n {
        return Err(GraphError::ArityMismatch { expected: v.n, got: p.len() }.into());
    }
    let mut out = GerVec::zero(v.n, v.grading, v.degree);
    for (m, c) in &v.terms {
        let words: Vec<Word> = m.words.iter().map(|w| w.iter().map(|&x| p.apply(x as usize) as u8).collect()).collect();
        out.add_raw(&words, c);
    }
    Ok(out)
}

/// Edge lists of ι of a single comb word, each with coefficient one.
pub fn iota_word(w: &[u8]) -> Vec<Vec<(u8, u8)>> {
    let mut acc: Vec<Vec<(u8, u8)>> = vec![Vec::new()];
    for l in 0..w.len().saturating_sub(1) {
        let mut next = Vec::new();
        for e in &acc {
            for &v in &w[l + 1..] {
                let mut e2 = e.clone();
                e2.push((w[l].min(v), w[l].max(v)));
                next.push(e2);
            }
        }
        acc = next;
    }
    acc
}

/// Edge lists of ι of a monomial: the words' graphs concatenated in order.
pub fn iota_mono(m: &GerMono) -> Vec<Vec<(u8, u8)>> {
    let mut acc: Vec<Vec<(u8, u8)>> = vec![Vec::new()];
    for w in &m.words {
        let parts = iota_word(w);
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for e in &acc {
            for p in &parts {
                let mut e2 = e.clone();
                e2.extend_from_slice(p);
                next.push(e2);
            }
        }
        acc = next;
    }
    acc
}

/// The embedding ι: Ger → Gra (the grading of `v` is ignored).
pub fn iota(v: &GerVec) -> GraVec {
    let e = (v.n as i64 - v.terms.keys().next().map_or(v.n as i64, |m| m.words.len() as i64)) as usize;
    let mut out = GraVec::zero(0, v.n, -(e as i64));
    for (m, c) in &v.terms {
        for edges in iota_mono(m) {
            out.add_orbit(&LabeledGraph::from_raw(0, v.n, edges), c);
        }
    }
    out
}

/// ι applied directly to an unnormalized expression, by the rules
/// `ι(xy) = ι(x) ⊔ ι(y)` and `ι({x,y}) = Σ_{u ∈ x, v ∈ y} (u,v) E_x E_y`.
pub fn iota_expr(e: &Expr) -> GraVec {
    fn rec(e: &Expr) -> Vec<(Vec<(u8, u8)>, Vec<u8>)> {
        match e {
            Expr::Gen(i) => vec![(Vec::new(), vec![*i])],
            Expr::Prod(fs) => {
                let mut acc = vec![(Vec::new(), Vec::new())];
                for f in fs {
                    let r = rec(f);
                    let mut next = Vec::new();
                    for (e1, v1) in &acc {
                        for (e2, v2) in &r {
                            let mut e = e1.clone();
                            e.extend_from_slice(e2);
                            let mut v = v1.clone();
                            v.extend_from_slice(v2);
                            next.push((e, v));
                        }
                    }
                    acc = next;
                }
                acc
            }
            Expr::Br(a, b) => {
                let (x, y) = (rec(a), rec(b));
                let mut out = Vec::new();
                for (e1, v1) in &x {
                    for (e2, v2) in &y {
                        for &u in v1 {
                            for &w in v2 {
                                let mut e = vec![(u.min(w), u.max(w))];
                                e.extend_from_slice(e1);
                                e.extend_from_slice(e2);
                                let mut v = v1.clone();
                                v.extend_from_slice(v2);
                                out.push((e, v));
                            }
                        }
                    }
                }
                out
            }
        }
    }
    let n = e.arity();
    let edges = (-e.degree_ger()) as usize;
    let mut out = GraVec::zero(0, n, -(edges as i64));
    for (es, _) in rec(e) {
        out.add_orbit(&LabeledGraph::from_raw(0, n, es), &Rational::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> Expr {
        s.parse().unwrap()
    }

    fn norm(s: &str) -> GerVec {
        normalize(&ex(s)).unwrap()
    }

    #[test]
    fn symmetry_and_degrees() {
        assert_eq!(norm("{2,1}"), norm("{1,2}"));
        for n in 1..=4 {
            for m in basis(n, Grading::Ger) {
                assert_eq!(m.degree(Grading::Ger), m.word_count() as i64 - n as i64);
                assert_eq!(m.degree(Grading::Lambda2Ger), n as i64 + m.word_count() as i64 - 2);
                assert!(m.is_basis());
            }
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis(1, Grading::Ger), vec![GerMono::new(vec![vec![1]])]);
        let b2 = basis(2, Grading::Ger);
        assert_eq!(b2.iter().map(|m| m.to_string()).collect::<Vec<_>>(), vec!["1*2", "{1,2}"]);
        assert_eq!(basis(3, Grading::Ger).len(), 6);
        assert_eq!(basis(4, Grading::Ger).len(), 24);
    }

    #[test]
    fn normalization_matches_iota() {
        for s in [
            "{{1,3},2}",
            "{{1,2},3}",
            "{3,{1,2}}",
            "{{2,3},{1,4}}",
            "{1*2,3}",
            "{{1,4},2*3}",
            "{{4,{1,3}},2}",
            "{2*{1,3},4}",
            "{{1,2}*3,{4,5}}",
        ] {
            let e = ex(s);
            assert_eq!(iota(&normalize(&e).unwrap()), iota_expr(&e), "{s}");
        }
    }

    #[test]
    fn normalize_is_projection() {
        for m in basis(4, Grading::Ger) {
            let v = normalize(&m.to_expr()).unwrap();
            assert_eq!(v, GerVec::basis_element(m.clone(), Grading::Ger));
        }
        assert!(normalize(&ex("{1,1}")).is_err());
        assert!(normalize(&ex("{1,3}")).is_err());
    }

    #[test]
    fn printed_insertions() {
        let u = norm("{2,3}*1*{4,5}");
        let w = norm("{1,2}");
        assert_eq!(insert_ger(&u, 2, &w).unwrap(), norm("{{2,3},4}*1*{5,6}").scaled(&Rational::from_int(-1)));
        assert_eq!(insert_ger(&u, 4, &w).unwrap(), norm("{2,3}*1*{{4,5},6}"));
        let mut expect = norm("{6,{2,3}}*1*{4,5}");
        expect.add_scaled(&norm("{2,3}*{6,1}*{4,5}"), &Rational::from_int(-1));
        expect.add_scaled(&norm("{2,3}*1*{6,{4,5}}"), &Rational::from_int(-1));
        assert_eq!(insert_ger(&w, 1, &u).unwrap(), expect);
        assert_eq!(insert_ger(&w, 1, &u).unwrap(), norm("{{2,3}*1*{4,5},6}"));
    }

    #[test]
    fn lambda_signs() {
        assert_eq!(lambda_sign(2, 2, 1, 1), Rational::from_int(-1));
        assert_eq!(lambda_sign(5, 1, 2, 1), Rational::one());
        assert_eq!(lambda_sign(2, 2, 1, 2), Rational::one());
        let p = GerVec::basis_element("1*2".parse().unwrap(), Grading::Lambda2Ger);
        let out = insert_lambda2ger(&p, 1, &p).unwrap();
        assert_eq!(out, GerVec::basis_element("1*2*3".parse().unwrap(), Grading::Lambda2Ger));
        assert_eq!(out.degree(), p.degree() + p.degree());
    }

    #[test]
    fn iota_examples() {
        let prod = iota(&norm("1*2"));
        assert_eq!(prod, GraVec::orbit(&LabeledGraph::new(0, 2, vec![]).unwrap()));
        let br = iota(&norm("{1,2}"));
        assert_eq!(br, GraVec::orbit(&LabeledGraph::new(0, 2, vec![(1, 2)]).unwrap()));
        let x = iota(&norm("{1,{2,3}}"));
        assert_eq!(x.len(), 2);
        let edge = iota(&norm("{1,2}"));
        assert_eq!(crate::gra::insert(&edge, 2, &edge).unwrap(), x);
    }

    #[test]
    fn len1_counts() {
        assert_eq!(lie_len1_count(&"1*2".parse().unwrap()), 2);
        assert_eq!(lie_len1_count(&"{1,2}".parse().unwrap()), 0);
        assert_eq!(lie_len1_count(&"1*{2,3}".parse().unwrap()), 1);
    }

    #[test]
    fn text_round_trip() {
        let m: GerMono = "{2,3}*1*{4,5}".parse().unwrap();
        assert_eq!(m.to_string(), "{2,3}*1*{4,5}");
        let mut v = norm("{{1,3},2}*4");
        v.add_scaled(&norm("{1,2}*{3,4}"), &Rational::new(1, 3));
        assert_eq!(v.to_string().parse::<GerVec>().unwrap(), v);
    }
}
