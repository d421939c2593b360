/// Calls `emit` once per reconnection of `inner` (on `m` vertices)
/// substituted at vertex `i` of `outer`, passing the combined edge list.
///
/// Outer vertices `j < i` keep their label, `j > i` move to `j + m - 1`, and
/// inner vertex `l` becomes `l + i - 1`.  Every endpoint at `i` (a loop has
/// two) is reattached to each inner vertex in turn.  Outer edges come first,
/// followed by the inner edges.
pub fn for_each_insertion(outer: &[(u8, u8)], i: u8, inner: &[(u8, u8)], m: u8, mut emit: impl FnMut(Vec<(u8, u8)>)) {
    let shift = |v: u8| if v < i { v } else { v + m - 1 };
    let mut slots: Vec<(usize, bool)> = Vec::new();
    for (k, &(a, b)) in outer.iter().enumerate() {
        if a == i {
            slots.push((k, false));
        }
        if b == i {
            slots.push((k, true));
        }
    }
    let base: Vec<(u8, u8)> =
        outer.iter().map(|&(a, b)| (if a == i { i } else { shift(a) }, if b == i { i } else { shift(b) })).collect();
    let tail: Vec<(u8, u8)> = inner.iter().map(|&(a, b)| (a + i - 1, b + i - 1)).collect();
    let mut digits = vec![0u8; slots.len()];
    loop {
        let mut edges = base.clone();
        for (&(k, second), &d) in slots.iter().zip(&digits) {
            if second {
                edges[k].1 = i + d;
            } else {
                edges[k].0 = i + d;
            }
        }
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.extend_from_slice(&tail);
        emit(edges);
        // Advance the base-m counter.
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return;
            }
            digits[pos] += 1;
            if digits[pos] < m {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_labels() {
        let mut out = Vec::new();
        // Triangle with the edge graph inserted at vertex 2: 2^2 terms.
        for_each_insertion(&[(1, 2), (2, 3), (1, 3)], 2, &[(1, 2)], 2, |e| out.push(e));
        assert_eq!(out.len(), 4);
        assert_eq!(out[0], vec![(1, 2), (2, 4), (1, 4), (2, 3)]);
        let mut loops = Vec::new();
        for_each_insertion(&[(1, 1)], 1, &[], 3, |e| loops.push(e));
        assert_eq!(loops.len(), 9);
        let mut none = Vec::new();
        for_each_insertion(&[], 1, &[], 2, |e| none.push(e));
        assert_eq!(none, vec![Vec::<(u8, u8)>::new()]);
    }
}
