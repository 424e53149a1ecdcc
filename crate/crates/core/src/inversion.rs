//! Inversion families, their application, and pushing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{invalid, Result};
use crate::graph::{mask, MultiDigraph};

/// An unordered collection of vertex sets to invert. Each set is stored
/// sorted and has at least two vertices. Repeated sets are allowed; see
/// [`InversionFamily::canonical`] for the reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InversionFamily {
    sets: Vec<Vec<usize>>,
}

fn normalise(mut set: Vec<usize>) -> Result<Vec<usize>> {
    set.sort_unstable();
    set.dedup();
    if set.len() < 2 {
        return invalid(format!("inversion set {set:?} has fewer than two vertices"));
    }
    Ok(set)
}

impl InversionFamily {
    pub fn new(sets: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let sets = sets.into_iter().map(normalise).collect::<Result<Vec<_>>>()?;
        Ok(InversionFamily { sets })
    }

    pub fn empty() -> Self {
        InversionFamily::default()
    }

    pub fn push(&mut self, set: Vec<usize>) -> Result<()> {
        self.sets.push(normalise(set)?);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.sets.iter()
    }

    pub fn into_sets(self) -> Vec<Vec<usize>> {
        self.sets
    }

    /// Sets sorted, with pairs of equal sets cancelled (inverting a set twice
    /// is the identity).
    pub fn canonical(&self) -> InversionFamily {
        let mut parity: BTreeMap<&Vec<usize>, bool> = BTreeMap::new();
        for s in &self.sets {
            *parity.entry(s).or_insert(false) ^= true;
        }
        InversionFamily { sets: parity.into_iter().filter(|(_, odd)| *odd).map(|(s, _)| s.clone()).collect() }
    }

    /// Symmetric difference of the two families as multisets over GF(2).
    pub fn symmetric_difference(&self, other: &InversionFamily) -> InversionFamily {
        let mut all = self.clone();
        all.sets.extend(other.sets.iter().cloned());
        all.canonical()
    }

    /// Whether every set has exactly `p` vertices.
    pub fn all_of_size(&self, p: usize) -> bool {
        self.sets.iter().all(|s| s.len() == p)
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for InversionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sets {
            write!(f, "inv:")?;
            for v in s {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Pairs `{u,v}` of `d` carrying arcs that are reversed an odd number of
/// times by `sets`.
fn odd_pairs(d: &MultiDigraph, sets: &[Vec<usize>]) -> Result<BTreeSet<(usize, usize)>> {
    let n = d.n();
    let pairs = d.pairs();
    let mut odd = BTreeSet::new();
    for s in sets {
        if let Some(&v) = s.iter().find(|&&v| v >= n) {
            return invalid(format!("vertex {v} out of range for n={n}"));
        }
        if s.len() * s.len() < 2 * pairs.len() {
            for (i, &u) in s.iter().enumerate() {
                for &v in &s[i + 1..] {
                    let (a, b) = (u.min(v), u.max(v));
                    if d.has_arc(a, b) || d.has_arc(b, a) {
                        if !odd.insert((a, b)) {
                            odd.remove(&(a, b));
                        }
                    }
                }
            }
        } else {
            let m = mask(n, s);
            for &(a, b, _, _) in &pairs {
                if m[a] && m[b] && !odd.insert((a, b)) {
                    odd.remove(&(a, b));
                }
            }
        }
    }
    Ok(odd)
}

/// Inv(D; 𝒳): every arc is reversed once per set containing both ends.
pub fn apply_inversions(d: &MultiDigraph, family: &InversionFamily) -> Result<MultiDigraph> {
    apply_sets(d, family.sets())
}

pub(crate) fn apply_sets(d: &MultiDigraph, sets: &[Vec<usize>]) -> Result<MultiDigraph> {
    let odd = odd_pairs(d, sets)?;
    let mut r = d.clone();
    for (u, v) in odd {
        let (a, b) = (d.multiplicity(u, v), d.multiplicity(v, u));
        r.set_pair(u, v, b, a);
    }
    Ok(r)
}

/// Inv(D, X) for a single set.
pub fn invert(d: &MultiDigraph, set: &[usize]) -> Result<MultiDigraph> {
    apply_sets(d, &[set.to_vec()])
}

/// Push(D; X): an arc is reversed iff its endpoints were pushed an odd
/// number of times in total. Repeated vertices in `pushed` count separately.
pub fn push(d: &MultiDigraph, pushed: &[usize]) -> Result<MultiDigraph> {
    let n = d.n();
    let mut parity = vec![false; n];
    for &v in pushed {
        if v >= n {
            return invalid(format!("vertex {v} out of range for n={n}"));
        }
        parity[v] ^= true;
    }
    let mut r = d.clone();
    for (u, v, a, b) in d.pairs() {
        if parity[u] != parity[v] {
            r.set_pair(u, v, b, a);
        }
    }
    Ok(r)
}

/// The family {V∖x : x ∈ X} realising a push by (n−1)-inversions.
pub fn push_family(n: usize, pushed: &[usize]) -> Result<InversionFamily> {
    InversionFamily::new(pushed.iter().map(|&x| (0..n).filter(|&v| v != x).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> MultiDigraph {
        MultiDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn invert_one_pair_of_triangle() {
        let r = invert(&cycle3(), &[0, 1]).unwrap();
        assert_eq!(r, MultiDigraph::from_arcs(3, [(1, 0), (1, 2), (2, 0)]).unwrap());
    }

    #[test]
    fn digon_inversion_is_identity() {
        let d = MultiDigraph::from_arcs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(invert(&d, &[0, 1]).unwrap(), d);
    }

    #[test]
    fn bundles_keep_shape() {
        let mut d = MultiDigraph::new(2);
        d.add_arcs(0, 1, 2).unwrap();
        d.add_arc(1, 0).unwrap();
        let r = invert(&d, &[0, 1]).unwrap();
        assert_eq!((r.multiplicity(0, 1), r.multiplicity(1, 0)), (1, 2));
    }

    #[test]
    fn out_of_range_and_small_sets_rejected() {
        let fam = InversionFamily::new([vec![0, 5]]).unwrap();
        assert!(apply_inversions(&cycle3(), &fam).is_err());
        assert!(InversionFamily::new([vec![1, 1]]).is_err());
    }

    #[test]
    fn push_examples() {
        let d = MultiDigraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(push(&d, &[0]).unwrap(), d.reversed());
        assert_eq!(push(&d, &[0, 1]).unwrap(), d);
    }

    #[test]
    fn canonical_cancels_pairs() {
        let f = InversionFamily::new([vec![2, 1], vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(f.canonical().sets(), &[vec![0, 1]]);
        let g = InversionFamily::new([vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(f.symmetric_difference(&g).sets(), &[vec![0, 2]]);
    }
}
