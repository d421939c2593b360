//! Canonical forms of edge-colored graphs under relabeling of the neutral
//! vertices `0..r` (0-based here), with the edge-order sign.
//!
//! The canonical form minimizes the sorted list of `(min, max, color)`
//! triples.  Operational vertices `r..nv` are fixed points.  The search
//! assigns labels to neutral vertices in increasing order and only explores
//! branches that can still reach the minimum; a brute-force reference over
//! all of `S_r` lives alongside for cross-checking.

use super::perm::sort_parity_odd;

const FREE: u8 = u8::MAX;

/// Result of canonicalizing a colored edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonResult {
    /// Canonical edge list per color, sorted, 0-based `(min, max)` pairs.
    pub lists: Vec<Vec<(u8, u8)>>,
    /// Parity of the edge permutation carrying the input order to the
    /// canonical order (summed over colors); `false` for odd graphs.
    pub sign_odd: bool,
    /// Some neutral relabeling fixing the graph permutes the edges oddly.
    pub odd: bool,
    /// Number of neutral relabelings fixing the graph.
    pub aut: u64,
}

/// Normalizes each edge to `(min, max)` and reports whether any color has a
/// repeated edge.
fn normalized(lists: &[&[(u8, u8)]]) -> (Vec<Vec<(u8, u8)>>, bool) {
    let mut multi = false;
    let out: Vec<Vec<(u8, u8)>> = lists
        .iter()
        .map(|l| {
            let v: Vec<(u8, u8)> = l.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            let mut s = v.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                multi = true;
            }
            v
        })
        .collect();
    (out, multi)
}

/// Relabels and returns the sorted key plus the sign parity.
fn evaluate(lists: &[Vec<(u8, u8)>], lab: &[u8]) -> (Vec<(u8, u8, u8)>, bool) {
    let mut key = Vec::new();
    let mut odd = false;
    for (c, l) in lists.iter().enumerate() {
        let relabeled: Vec<(u8, u8)> = l
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (lab[a as usize], lab[b as usize]);
                (x.min(y), x.max(y))
            })
            .collect();
        odd ^= sort_parity_odd(&relabeled);
        key.extend(relabeled.into_iter().map(|(x, y)| (x, y, c as u8)));
    }
    key.sort_unstable();
    (key, odd)
}

fn split_key(key: &[(u8, u8, u8)], ncol: usize) -> Vec<Vec<(u8, u8)>> {
    let mut lists = vec![Vec::new(); ncol];
    for &(a, b, c) in key {
        lists[c as usize].push((a, b));
    }
    lists
}

/// Brute-force canonical form over all neutral relabelings.  Returns `None`
/// on a repeated edge within one color.
pub fn canon_reference(nv: usize, r: usize, lists: &[&[(u8, u8)]]) -> Option<CanonResult> {
    let (lists, multi) = normalized(lists);
    if multi {
        return None;
    }
    let mut best: Option<(Vec<(u8, u8, u8)>, bool)> = None;
    let mut odd = false;
    let mut aut = 0u64;
    for p in super::perm::all_permutations(r) {
        let mut lab: Vec<u8> = (0..nv as u8).collect();
        for (i, &x) in p.images().iter().enumerate() {
            lab[i] = (x - 1) as u8;
        }
        let (key, par) = evaluate(&lists, &lab);
        match &best {
            Some((bk, bp)) if *bk == key => {
                aut += 1;
                if *bp != par {
                    odd = true;
                }
            }
            Some((bk, _)) if *bk < key => {}
            _ => {
                best = Some((key, par));
                aut = 1;
                odd = false;
            }
        }
    }
    let (key, par) = best.expect("S_r is nonempty");
    Some(CanonResult { lists: split_key(&key, lists.len()), sign_odd: par && !odd, odd, aut })
}

struct Search<'a> {
    nv: usize,
    r: usize,
    lists: &'a [Vec<(u8, u8)>],
    /// Color mask of the non-loop edges between each pair, row-major.
    mat: Vec<u32>,
    /// Color mask of the loops at each vertex.
    loops: Vec<u32>,
    /// Number of incident edge ends other than loops, plus loops.
    incident: Vec<usize>,
    ncol: usize,
    lab: Vec<u8>,
    order: Vec<u8>,
    best: Vec<(u8, u8, u8)>,
    have_best: bool,
    key: Vec<(u8, u8, u8)>,
    scratch: Vec<(u8, u8)>,
    best_par: bool,
    odd: bool,
    aut: u64,
}

/// Ordering token: loops, then neighbors to be labeled next, then fixed
/// neighbors, then an end marker that sorts after everything.
type Token = (u8, u8, u8);
const END: Token = (3, 0, 0);

/// Order-preserving code of a color set, where sets compare as their sorted
/// color lists terminated by a marker larger than every color.
fn set_code(mask: u32, ncol: usize) -> u32 {
    let mut code = 0;
    for i in 0..ncol {
        if mask >> i & 1 == 0 {
            code |= 1 << (ncol - 1 - i);
        }
    }
    code
}

impl<'a> Search<'a> {
    fn new(nv: usize, r: usize, lists: &'a [Vec<(u8, u8)>]) -> Self {
        let ncol = lists.len();
        assert!(ncol <= 32, "at most 32 edge colors");
        let mut mat = vec![0u32; nv * nv];
        let mut loops = vec![0u32; nv];
        let mut incident = vec![0usize; nv];
        for (c, l) in lists.iter().enumerate() {
            for &(a, b) in l {
                let (a, b) = (a as usize, b as usize);
                if a == b {
                    loops[a] |= 1 << c;
                    incident[a] += 1;
                } else {
                    mat[a * nv + b] |= 1 << c;
                    mat[b * nv + a] |= 1 << c;
                    incident[a] += 1;
                    incident[b] += 1;
                }
            }
        }
        let mut lab = vec![FREE; nv];
        for (v, x) in lab.iter_mut().enumerate().skip(r) {
            *x = v as u8;
        }
        let ne: usize = lists.iter().map(|l| l.len()).sum();
        Search {
            nv,
            r,
            lists,
            mat,
            loops,
            incident,
            ncol,
            lab,
            order: Vec::with_capacity(r),
            best: Vec::with_capacity(ne),
            have_best: false,
            key: Vec::with_capacity(ne),
            scratch: Vec::with_capacity(ne),
            best_par: false,
            odd: false,
            aut: 0,
        }
    }

    fn is_free(&self, v: usize) -> bool {
        self.lab[v] == FREE
    }

    /// Smallest color-set code among edges from `v` to free neutral
    /// vertices, if any.
    fn min_free_code(&self, v: usize) -> Option<u32> {
        let row = &self.mat[v * self.nv..(v + 1) * self.nv];
        (0..self.r).filter(|&w| row[w] != 0 && self.is_free(w)).map(|w| set_code(row[w], self.ncol)).min()
    }

    fn signature(&self, v: usize) -> Vec<Token> {
        let mut sig: Vec<Token> = (0..self.ncol).filter(|&c| self.loops[v] >> c & 1 == 1).map(|c| (0, c as u8, 0)).collect();
        let row = &self.mat[v * self.nv..(v + 1) * self.nv];
        let mut groups: Vec<u32> = (0..self.r).filter(|&w| row[w] != 0 && self.is_free(w)).map(|w| set_code(row[w], self.ncol)).collect();
        groups.sort_unstable();
        for (g, &code) in groups.iter().enumerate() {
            for c in 0..self.ncol {
                if code >> (self.ncol - 1 - c) & 1 == 0 {
                    sig.push((1, g as u8, c as u8));
                }
            }
        }
        for (w, &m) in row.iter().enumerate().skip(self.r) {
            for c in 0..self.ncol {
                if m >> c & 1 == 1 {
                    sig.push((2, w as u8, c as u8));
                }
            }
        }
        sig.push(END);
        sig
    }

    fn assign(&mut self, v: usize) {
        self.lab[v] = self.order.len() as u8;
        self.order.push(v as u8);
    }

    fn unassign(&mut self) {
        let v = self.order.pop().expect("nonempty labeling");
        self.lab[v as usize] = FREE;
    }

    fn leaf(&mut self, factor: u64, path_odd: bool) {
        self.key.clear();
        let mut par = false;
        for (c, l) in self.lists.iter().enumerate() {
            self.scratch.clear();
            self.scratch.extend(l.iter().map(|&(a, b)| {
                let (x, y) = (self.lab[a as usize], self.lab[b as usize]);
                (x.min(y), x.max(y))
            }));
            par ^= sort_parity_odd(&self.scratch);
            self.key.extend(self.scratch.iter().map(|&(x, y)| (x, y, c as u8)));
        }
        self.key.sort_unstable();
        let cmp = if self.have_best { self.key.cmp(&self.best) } else { std::cmp::Ordering::Less };
        match cmp {
            std::cmp::Ordering::Equal => {
                self.aut += factor;
                if par != self.best_par || path_odd {
                    self.odd = true;
                }
            }
            std::cmp::Ordering::Greater => {}
            std::cmp::Ordering::Less => {
                std::mem::swap(&mut self.best, &mut self.key);
                self.have_best = true;
                self.best_par = par;
                self.aut = factor;
                self.odd = path_odd;
            }
        }
    }

    fn run(&mut self, factor: u64, path_odd: bool) {
        let k = self.order.len();
        if k == self.r {
            self.leaf(factor, path_odd);
            return;
        }
        // Forced step: the next label goes to a free neighbor of the
        // earliest labeled vertex that still has one.
        for j in 0..k {
            let v = self.order[j] as usize;
            let Some(best) = self.min_free_code(v) else { continue };
            for w in 0..self.r {
                let m = self.mat[v * self.nv + w];
                if m != 0 && self.is_free(w) && set_code(m, self.ncol) == best {
                    self.assign(w);
                    self.run(factor, path_odd);
                    self.unassign();
                }
            }
            return;
        }
        // New component: pick free vertices with the smallest row.
        let free: Vec<usize> = (0..self.r).filter(|&v| self.is_free(v)).collect();
        let sigs: Vec<Vec<Token>> = free.iter().map(|&v| self.signature(v)).collect();
        let min = sigs.iter().min().expect("a free vertex remains").clone();
        let cands: Vec<usize> = free.iter().zip(&sigs).filter(|(_, s)| **s == min).map(|(&v, _)| v).collect();
        if min.iter().any(|t| t.0 == 1) {
            for w in cands {
                self.assign(w);
                self.run(factor, path_odd);
                self.unassign();
            }
            return;
        }
        // Interchangeable isolated-from-free vertices: label them all at
        // once.  Swapping two of them permutes their incident edges
        // pairwise.
        let s = cands.len();
        let group_odd = s >= 2 && self.incident[cands[0]] % 2 == 1;
        for &w in &cands {
            self.assign(w);
        }
        let fact: u64 = (1..=s as u64).product();
        self.run(factor * fact, path_odd || group_odd);
        for _ in 0..s {
            self.unassign();
        }
    }
}

/// Canonical form by pruned search.  Agrees exactly with
/// [`canon_reference`].  Returns `None` on a repeated edge within one color.
pub fn canon(nv: usize, r: usize, lists: &[&[(u8, u8)]]) -> Option<CanonResult> {
    let (lists, multi) = normalized(lists);
    if multi {
        return None;
    }
    if r == 0 {
        let lab: Vec<u8> = (0..nv as u8).collect();
        let (key, par) = evaluate(&lists, &lab);
        return Some(CanonResult { lists: split_key(&key, lists.len()), sign_odd: par, odd: false, aut: 1 });
    }
    let mut s = Search::new(nv, r, &lists);
    s.run(1, false);
    assert!(s.have_best, "search reaches a leaf");
    let key = std::mem::take(&mut s.best);
    Some(CanonResult { lists: split_key(&key, lists.len()), sign_odd: s.best_par && !s.odd, odd: s.odd, aut: s.aut })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_edges(nv: usize, loops: bool) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for a in 0..nv as u8 {
            for b in a..nv as u8 {
                if a != b || loops {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn agrees_with_reference_single_color() {
        // Every simple graph with loops on up to 4 vertices, every split
        // into neutral and operational vertices, several edge orders.
        for nv in 1..=4usize {
            let pool = all_edges(nv, true);
            for mask in 0u32..(1 << pool.len()) {
                let mut edges: Vec<(u8, u8)> =
                    pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                if mask % 3 == 0 {
                    edges.reverse();
                }
                for r in 0..=nv {
                    let a = canon(nv, r, &[&edges]);
                    let b = canon_reference(nv, r, &[&edges]);
                    assert_eq!(a, b, "nv={nv} r={r} edges={edges:?}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_reference_two_colors() {
        let nv = 3;
        let pool = all_edges(nv, true);
        for m1 in 0u32..(1 << pool.len()) {
            for m2 in (0u32..(1 << pool.len())).step_by(5) {
                let e1: Vec<(u8, u8)> =
                    pool.iter().enumerate().filter(|(i, _)| m1 >> i & 1 == 1).map(|(_, &e)| e).collect();
                let mut e2: Vec<(u8, u8)> =
                    pool.iter().enumerate().filter(|(i, _)| m2 >> i & 1 == 1).map(|(_, &e)| e).collect();
                e2.reverse();
                for r in 0..=nv {
                    assert_eq!(canon(nv, r, &[&e1, &e2]), canon_reference(nv, r, &[&e1, &e2]));
                }
            }
        }
    }

    #[test]
    fn square_and_pentagon() {
        let square = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let c = canon(4, 4, &[&square]).unwrap();
        assert!(c.odd);
        let pent = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let c = canon(5, 5, &[&pent]).unwrap();
        assert!(!c.odd);
        assert_eq!(c.aut, 10);
        assert!(canon(2, 2, &[&[(0, 1), (1, 0)]]).is_none());
    }
}
