use std::fmt;

use super::GraphError;

/// A permutation of `{1, ..., k}`, stored by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// `images[i - 1] = σ(i)`, 1-based values.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { images: (1..=k).collect() }
    }

    /// Builds a permutation from its 1-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GraphError> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x == 0 || x > k || seen[x - 1] {
                return Err(GraphError::NotAPermutation(images.clone()));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// σ(i) for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&x| self.images[x - 1]).collect() }
    }

    /// True for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut transpositions = 0;
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut c = s;
            let mut len = 0;
            while !seen[c] {
                seen[c] = true;
                c = self.images[c] - 1;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }

    pub fn sign(&self) -> i32 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    /// Extends to `{1..k+extra}` by fixing the new points.
    pub fn extend(&self, extra: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.len() + 1..=self.len() + extra);
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All `(p_1, ..., p_k)`-shuffles in lexicographic order of their image
/// sequences: permutations increasing on each consecutive block.
pub fn shuffles(blocks: &[usize]) -> Vec<Permutation> {
    let total: usize = blocks.iter().sum();
    // Assign each position 1..total to a block; σ maps block b's j-th
    // element to the j-th position assigned to b.
    let mut out = Vec::new();
    let mut remaining = blocks.to_vec();
    let mut assign = Vec::with_capacity(total);
    fn rec(remaining: &mut Vec<usize>, assign: &mut Vec<usize>, total: usize, blocks: &[usize], out: &mut Vec<Permutation>) {
        if assign.len() == total {
            let mut images = vec![0; total];
            let mut offsets: Vec<usize> = Vec::with_capacity(blocks.len());
            let mut acc = 0;
            for b in blocks {
                offsets.push(acc);
                acc += b;
            }
            let mut counters = vec![0; blocks.len()];
            for (pos, &b) in assign.iter().enumerate() {
                images[offsets[b] + counters[b]] = pos + 1;
                counters[b] += 1;
            }
            out.push(Permutation { images });
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                assign.push(b);
                rec(remaining, assign, total, blocks, out);
                assign.pop();
                remaining[b] += 1;
            }
        }
    }
    rec(&mut remaining, &mut assign, total, blocks, &mut out);
    out.sort();
    out
}

/// The cycle `i -> i+1 -> ... -> j -> i` in `S_ambient`.
pub fn cycle(i: usize, j: usize, ambient: usize) -> Result<Permutation, GraphError> {
    if i == 0 || i > j || j > ambient {
        return Err(GraphError::IndexOutOfRange { index: j.max(i), bound: ambient });
    }
    let mut images: Vec<usize> = (1..=ambient).collect();
    for x in i..j {
        images[x - 1] = x + 1;
    }
    images[j - 1] = i;
    Ok(Permutation { images })
}

/// All permutations of `{1..k}` in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Parity of the permutation sorting a list of distinct comparable items.
pub fn sort_parity_odd<T: Ord>(items: &[T]) -> bool {
    let mut inv = 0usize;
    for a in 0..items.len() {
        for b in a + 1..items.len() {
            if items[a] > items[b] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn shuffle_counts() {
        let s = shuffles(&[1, 1]);
        assert_eq!(s, vec![Permutation::identity(2), Permutation::from_images(vec![2, 1]).unwrap()]);
        assert_eq!(shuffles(&[2, 1]).len(), 3);
        for p in 0..=4 {
            for q in 0..=4 {
                assert_eq!(shuffles(&[p, q]).len(), binom(p + q, p));
            }
        }
        for s in shuffles(&[2, 3]) {
            let im = s.images();
            assert!(im[0] < im[1] && im[2] < im[3] && im[3] < im[4]);
        }
    }

    #[test]
    fn cycles() {
        assert!(cycle(2, 2, 5).unwrap().is_identity());
        assert_eq!(cycle(1, 3, 3).unwrap().images(), &[2, 3, 1]);
        assert!(cycle(0, 1, 3).is_err());
        assert!(cycle(2, 4, 3).is_err());
        for n in 1..=5 {
            let mut invs: Vec<Permutation> = (1..=n).map(|i| cycle(1, i, n).unwrap().inverse()).collect();
            invs.sort();
            assert_eq!(invs, shuffles(&[1, n - 1]));
        }
    }

    #[test]
    fn signs() {
        assert!(!Permutation::identity(4).is_odd());
        assert!(Permutation::from_images(vec![2, 1, 3]).unwrap().is_odd());
        assert!(!cycle(1, 3, 3).unwrap().is_odd());
        assert_eq!(all_permutations(4).len(), 24);
        for p in all_permutations(4) {
            assert_eq!(p.is_odd(), sort_parity_odd(p.images()));
            assert!(p.compose(&p.inverse()).is_identity());
        }
    }
}
