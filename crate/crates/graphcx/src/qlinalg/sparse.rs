use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::rational::{primitive_integer_vector, Rational};
use super::LinalgError;

/// Sparse vector: entries sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Sorts a list of (index, value) pairs, merging duplicates and dropping zeros.
pub fn compress(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Sparse rational matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    n_rows: usize,
    n_cols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        SparseMat { n_rows, n_cols, cols: vec![Vec::new(); n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        SparseMat { n_rows: n, n_cols: n, cols }
    }

    /// Builds a matrix from its columns. Entries are merged and zeros dropped.
    pub fn from_columns(n_rows: usize, cols: Vec<Vec<(usize, Rational)>>) -> Self {
        let cols: Vec<SparseVec> = cols.into_iter().map(compress).collect();
        for c in &cols {
            for (r, _) in c {
                assert!(*r < n_rows, "row index {r} out of range {n_rows}");
            }
        }
        SparseMat { n_rows, n_cols: cols.len(), cols }
    }

    pub fn from_triplets(n_rows: usize, n_cols: usize, entries: Vec<(usize, usize, Rational)>) -> Self {
        let mut cols = vec![Vec::new(); n_cols];
        for (r, c, x) in entries {
            assert!(r < n_rows && c < n_cols, "entry ({r},{c}) out of range");
            cols[c].push((r, x));
        }
        Self::from_columns(n_rows, cols)
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    entries.push((i, j, x.clone()));
                }
            }
        }
        Self::from_triplets(n_rows, n_cols, entries)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Entries sorted by (row, column).
    pub fn triplets(&self) -> Vec<(usize, usize, Rational)> {
        let mut t: Vec<_> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x.clone())))
            .collect();
        t.sort_by_key(|e| (e.0, e.1));
        t
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.n_rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                rows[*r].push((c, x.clone()));
            }
        }
        rows
    }

    pub fn transpose(&self) -> SparseMat {
        SparseMat { n_rows: self.n_cols, n_cols: self.n_rows, cols: self.rows() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMat) -> Result<SparseMat, LinalgError> {
        if self.n_cols != rhs.n_rows {
            return Err(LinalgError::DimensionMismatch { left: self.n_cols, right: rhs.n_rows });
        }
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, x) in rc {
                    for (i, y) in &self.cols[*k] {
                        *acc.entry(*i).or_default() += &(x * y);
                    }
                }
                acc.into_iter().filter(|e| !e.1.is_zero()).collect()
            })
            .collect();
        Ok(SparseMat { n_rows: self.n_rows, n_cols: rhs.n_cols, cols })
    }

    /// Reorders rows and columns: new row `row_perm[r]` holds old row `r`,
    /// likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMat {
        let mut cols = vec![Vec::new(); self.n_cols];
        for (c, col) in self.cols.iter().enumerate() {
            cols[col_perm[c]] = col.iter().map(|(r, x)| (row_perm[*r], x.clone())).collect();
        }
        SparseMat::from_columns(self.n_rows, cols)
    }

    /// Text dump: header `rows cols nnz`, then `r c p/q` per entry (0-based
    /// indices) sorted by (r, c).
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.n_rows, self.n_cols, self.nnz());
        for (r, c, x) in self.triplets() {
            let _ = writeln!(s, "{} {} {}", r, c, x);
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<SparseMat, LinalgError> {
        let bad = |l: &str| LinalgError::Parse(l.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().ok_or_else(|| bad("empty"))?;
        let h: Vec<usize> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(head)))
            .collect::<Result<_, _>>()?;
        if h.len() != 3 {
            return Err(bad(head));
        }
        let mut entries = Vec::new();
        for l in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad(l));
            }
            let r: usize = t[0].parse().map_err(|_| bad(l))?;
            let c: usize = t[1].parse().map_err(|_| bad(l))?;
            let x: Rational = t[2].parse().map_err(|_| bad(l))?;
            if r >= h[0] || c >= h[1] {
                return Err(bad(l));
            }
            entries.push((r, c, x));
        }
        let m = SparseMat::from_triplets(h[0], h[1], entries);
        if m.nnz() != h[2] {
            return Err(bad(head));
        }
        Ok(m)
    }
}

/// `row_a += f * row_b` on sorted sparse rows.
fn axpy(a: &SparseVec, f: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + &(f * &b[j].1);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a list of sparse vectors (rows), by sparse elimination.
///
/// Pivot rule: the active row with fewest entries (lowest index on ties),
/// and within it the column with the fewest active entries (lowest index on
/// ties). This is the row-restricted Markowitz heuristic.
pub fn rank_of_rows(rows: Vec<SparseVec>, n_cols: usize) -> usize {
    let mut rows: Vec<SparseVec> = rows.into_iter().map(compress).collect();
    let mut col_count = vec![0usize; n_cols];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n_cols];
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_count[*c] += 1;
            col_rows[*c].push(i);
        }
        if !r.is_empty() {
            queue.insert((r.len(), i));
        }
    }
    let mut active = vec![true; rows.len()];
    let mut rank = 0;
    while let Some(&(len, p)) = queue.iter().next() {
        queue.remove(&(len, p));
        active[p] = false;
        let prow = std::mem::take(&mut rows[p]);
        for (c, _) in &prow {
            col_count[*c] -= 1;
        }
        let (pc, pv) = prow
            .iter()
            .min_by_key(|(c, _)| (col_count[*c], *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("nonempty pivot row");
        rank += 1;
        let targets = std::mem::take(&mut col_rows[pc]);
        for r in targets {
            if !active[r] {
                continue;
            }
            let Ok(k) = rows[r].binary_search_by_key(&pc, |e| e.0) else { continue };
            let f = -(&rows[r][k].1 / &pv);
            let old = std::mem::take(&mut rows[r]);
            queue.remove(&(old.len(), r));
            let new = axpy(&old, &f, &prow);
            for (c, _) in &old {
                col_count[*c] -= 1;
            }
            {
                let mut oi = 0;
                for (c, _) in &new {
                    col_count[*c] += 1;
                    while oi < old.len() && old[oi].0 < *c {
                        oi += 1;
                    }
                    if oi >= old.len() || old[oi].0 != *c {
                        col_rows[*c].push(r);
                    }
                }
            }
            if !new.is_empty() {
                queue.insert((new.len(), r));
            } else {
                active[r] = false;
            }
            rows[r] = new;
        }
    }
    rank
}

pub fn rank(m: &SparseMat) -> usize {
    // Rows of the transpose are the columns; rank is the same.
    rank_of_rows(m.cols.clone(), m.n_rows)
}

/// Reduced row echelon form with leftmost pivots. Returns the nonzero rows
/// (each with leading entry 1) and their pivot columns.
pub fn rref(m: &SparseMat) -> (Vec<BTreeMap<usize, Rational>>, Vec<usize>) {
    let mut rows: Vec<BTreeMap<usize, Rational>> = m
        .rows()
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.into_iter().collect())
        .collect();
    let mut done: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut pivots = Vec::new();
    loop {
        // Smallest leading column among the remaining rows.
        let Some((idx, col)) = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.keys().next().map(|c| (i, *c)))
            .min_by_key(|&(i, c)| (c, i))
        else {
            break;
        };
        let mut prow = rows.swap_remove(idx);
        let inv = prow[&col].recip();
        for v in prow.values_mut() {
            *v = &*v * &inv;
        }
        for r in rows.iter_mut().chain(done.iter_mut()) {
            if let Some(f) = r.get(&col).cloned() {
                for (c, x) in &prow {
                    let e = r.entry(*c).or_default();
                    *e -= &(&f * x);
                    if e.is_zero() {
                        r.remove(c);
                    }
                }
            }
        }
        rows.retain(|r| !r.is_empty());
        done.push(prow);
        pivots.push(col);
    }
    let mut order: Vec<usize> = (0..done.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let done: Vec<_> = order.iter().map(|&i| done[i].clone()).collect();
    let pivots: Vec<_> = order.iter().map(|&i| pivots[i]).collect();
    (done, pivots)
}

/// Basis of the null space as primitive integer vectors with positive
/// leading entry, one per free column in increasing column order.
pub fn kernel_basis(m: &SparseMat) -> Vec<Vec<Rational>> {
    let (rows, pivots) = rref(m);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for f in 0..m.n_cols() {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![Rational::zero(); m.n_cols()];
        v[f] = Rational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if let Some(x) = row.get(&f) {
                v[p] = -x.clone();
            }
        }
        out.push(primitive_integer_vector(&v));
    }
    out
}

/// `dim C^k - rank(d_out) - rank(d_in)` for `d_in: C^{k-1} -> C^k` and
/// `d_out: C^k -> C^{k+1}`, after checking `d_out * d_in = 0`.
pub fn cohomology_dim(d_in: &SparseMat, d_out: &SparseMat) -> Result<usize, LinalgError> {
    if d_in.n_rows() != d_out.n_cols() {
        return Err(LinalgError::DimensionMismatch { left: d_out.n_cols(), right: d_in.n_rows() });
    }
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero() {
        return Err(LinalgError::CompositionNonzero { nnz: comp.nnz() });
    }
    let dim = d_in.n_rows();
    let r_out = rank(d_out);
    let r_in = rank(d_in);
    Ok(dim - r_out - r_in)
}

/// Incrementally built echelon basis of a subspace, able to express vectors
/// as combinations of the accepted generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// Reduced rows keyed by their leading (smallest) column.
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    /// Number of accepted generators.
    n_gen: usize,
    track: bool,
}

impl Echelon {
    /// `track = true` keeps the change of basis needed by [`Echelon::express`].
    pub fn new(track: bool) -> Self {
        Echelon { rows: BTreeMap::new(), n_gen: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_full(&self, v: &[(usize, Rational)]) -> (BTreeMap<usize, Rational>, BTreeMap<usize, Rational>) {
        let mut w: BTreeMap<usize, Rational> = v.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        let mut comb: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let Some((&c, x)) = w.range(cursor..).next() else { break };
            let x = x.clone();
            cursor = c + 1;
            let Some((row, t)) = self.rows.get(&c) else { continue };
            let f = &x / &row[0].1;
            for (k, y) in row {
                let e = w.entry(*k).or_default();
                *e -= &(&f * y);
                if e.is_zero() {
                    w.remove(k);
                }
            }
            if self.track {
                for (k, y) in t {
                    let e = comb.entry(*k).or_default();
                    *e += &(&f * y);
                    if e.is_zero() {
                        comb.remove(k);
                    }
                }
            }
        }
        (w, comb)
    }

    /// Residual of `v` after reduction by the current basis.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        self.reduce_full(v).0.into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce_full(v).0.is_empty()
    }

    /// Adds `v` as a generator if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let (w, comb) = self.reduce_full(v);
        if w.is_empty() {
            return false;
        }
        let gen = self.n_gen;
        self.n_gen += 1;
        let row: SparseVec = w.into_iter().collect();
        // row = v - sum comb_k * (generator combination k), so in terms of
        // generators: row = gen - sum comb.
        let t: SparseVec = if self.track {
            let mut t: Vec<(usize, Rational)> = comb.into_iter().map(|(k, x)| (k, -x)).collect();
            t.push((gen, Rational::one()));
            compress(t)
        } else {
            Vec::new()
        };
        self.rows.insert(row[0].0, (row, t));
        true
    }

    /// Coordinates of `v` in terms of the accepted generators, in the order
    /// they were accepted, or `None` if `v` is not in the span.
    pub fn express(&self, v: &[(usize, Rational)]) -> Option<SparseVec> {
        assert!(self.track, "express needs a tracking echelon basis");
        let (w, comb) = self.reduce_full(v);
        if w.is_empty() {
            Some(comb.into_iter().collect())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMat::identity(3)), 3);
        assert_eq!(rank(&SparseMat::zero(4, 7)), 0);
        let m = SparseMat::from_dense(&[vec![Rational::new(1, 2), q(1)], vec![q(1), q(2)]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMat::identity(2)).is_empty());
        let k = kernel_basis(&SparseMat::zero(1, 2));
        assert_eq!(k, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        let k = kernel_basis(&SparseMat::from_dense(&[vec![q(1), q(1)]]));
        assert_eq!(k, vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology_dim(&SparseMat::zero(5, 0), &SparseMat::zero(0, 5)).unwrap(), 5);
        assert_eq!(cohomology_dim(&SparseMat::identity(4), &SparseMat::zero(0, 4)).unwrap(), 0);
        let bad = cohomology_dim(&SparseMat::identity(2), &SparseMat::identity(2));
        assert!(matches!(bad, Err(LinalgError::CompositionNonzero { .. })));
    }

    #[test]
    fn dump_round_trip() {
        let m = SparseMat::from_triplets(3, 2, vec![(2, 1, Rational::new(-1, 3)), (0, 0, q(5))]);
        let d = m.dump();
        assert_eq!(d, "3 2 2\n0 0 5/1\n2 1 -1/3\n");
        assert_eq!(SparseMat::parse_dump(&d).unwrap(), m);
    }

    #[test]
    fn echelon_express() {
        let mut e = Echelon::new(true);
        let a = vec![(0, q(1)), (1, q(1))];
        let b = vec![(1, q(1)), (2, q(2))];
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        assert!(!e.insert(&[(0, q(2)), (1, q(3)), (2, q(2))]));
        let c = e.express(&[(0, q(3)), (1, q(1)), (2, q(-4))]).unwrap();
        assert_eq!(c, vec![(0, q(3)), (1, q(-2))]);
        assert!(e.express(&[(2, q(1))]).is_none());
    }
}
