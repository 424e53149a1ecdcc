//! Dense linear algebra over GF(2).

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the inner product.
    pub fn dot(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn and_count(&self, other: &Bits) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Incrementally built echelon basis of a span, remembering for each basis
/// vector which inputs it combines.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    inputs: usize,
    // (pivot, vector, combination of input indices)
    rows: Vec<(usize, Bits, Vec<usize>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, inputs: 0, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Adds input vector number `self.inputs`; returns whether rank grew.
    pub fn add(&mut self, v: &Bits) -> bool {
        let id = self.inputs;
        self.inputs += 1;
        let mut v = v.clone();
        let mut combo = vec![id];
        for (p, row, c) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
                combo = xor_sorted(&combo, c);
            }
        }
        match v.first_one() {
            None => false,
            Some(p) => {
                for (_, row, c) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&v);
                        *c = xor_sorted(c, &combo);
                    }
                }
                self.rows.push((p, v, combo));
                true
            }
        }
    }

    /// Input indices whose sum is `target`, if `target` lies in the span.
    pub fn express(&self, target: &Bits) -> Option<Vec<usize>> {
        let mut v = target.clone();
        let mut combo = Vec::new();
        for (p, row, c) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
                combo = xor_sorted(&combo, c);
            }
        }
        v.is_zero().then_some(combo)
    }

    /// Basis of the orthogonal complement: vectors `h` with `h·b = 0` for
    /// every `b` in the span. Membership in the span is equivalent to being
    /// orthogonal to all of them.
    pub fn complement(&self) -> Vec<Bits> {
        // Rows are fully reduced, so each pivot column appears in one row.
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _, _)| *p).collect();
        let mut is_pivot = vec![false; self.dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.dim)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut h = Bits::zeros(self.dim);
                h.set(f, true);
                for (p, row, _) in &self.rows {
                    if row.get(f) {
                        h.set(*p, true);
                    }
                }
                h
            })
            .collect()
    }
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Solves `row·x = rhs` for every `(row, rhs)`; free variables are zero.
pub fn solve(rows: &[(Bits, bool)], vars: usize) -> Option<Bits> {
    let mut reduced: Vec<(usize, Bits, bool)> = Vec::new();
    for (row, rhs) in rows {
        let mut r = row.clone();
        let mut b = *rhs;
        for (p, pr, pb) in &reduced {
            if r.get(*p) {
                r.xor_assign(pr);
                b ^= pb;
            }
        }
        match r.first_one() {
            None if b => return None,
            None => {}
            Some(p) => {
                for (_, pr, pb) in reduced.iter_mut() {
                    if pr.get(p) {
                        pr.xor_assign(&r);
                        *pb ^= b;
                    }
                }
                reduced.push((p, r, b));
            }
        }
    }
    let mut x = Bits::zeros(vars);
    for (p, _, b) in &reduced {
        x.set(*p, *b);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(len: usize, ones: &[usize]) -> Bits {
        let mut b = Bits::zeros(len);
        ones.iter().for_each(|&i| b.set(i, true));
        b
    }

    #[test]
    fn span_expresses_sums() {
        let mut s = Span::new(4);
        assert!(s.add(&bits(4, &[0, 1])));
        assert!(s.add(&bits(4, &[1, 2])));
        assert!(!s.add(&bits(4, &[0, 2])));
        assert_eq!(s.express(&bits(4, &[0, 2])), Some(vec![0, 1]));
        assert_eq!(s.express(&bits(4, &[3])), None);
        for h in s.complement() {
            assert!(!h.dot(&bits(4, &[0, 1])) && !h.dot(&bits(4, &[1, 2])));
        }
        assert_eq!(s.complement().len(), 2);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let rows = vec![(bits(3, &[0, 1]), true), (bits(3, &[1]), false)];
        let x = solve(&rows, 3).unwrap();
        assert!(x.get(0) && !x.get(1));
        let bad = vec![(bits(2, &[0, 1]), true), (bits(2, &[0, 1]), false)];
        assert!(solve(&bad, 2).is_none());
    }
}
