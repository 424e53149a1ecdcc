//! Exact and brute-force reference computations.

mod exact;
mod orient;
mod packing;
mod reach;

pub use exact::exact_inv_kp;
pub(crate) use exact::exact_over;
pub use orient::{exists_k_arc_strong_orientation, ORIENTATION_LIMIT};
pub use packing::{max_hypergraph_matching, max_p3_packing, Hypergraph};
pub use reach::{bfs_reachable, gf2_reachable, strong_pushing_bruteforce, BFS_LIMIT, PUSH_LIMIT};

use itertools::Itertools;

use crate::error::{unsupported, Result};
use crate::gf2::Bits;
use crate::graph::MultiDigraph;

/// Whether inversion sets must have exactly `p` vertices or at most `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SizeMode {
    Exact,
    AtMost,
}

/// Upper limit on the number of candidate sets an oracle will enumerate.
pub const CANDIDATE_LIMIT: u128 = 4_000_000;

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r.min(n - r)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub(crate) fn candidate_sizes(n: usize, p: usize, mode: SizeMode) -> Vec<usize> {
    match mode {
        SizeMode::Exact if p <= n && p >= 2 => vec![p],
        SizeMode::Exact => vec![],
        SizeMode::AtMost => (2..=p.min(n)).collect(),
    }
}

/// Pairs whose orientation can change, indexed densely.
pub(crate) struct PairIndex {
    pub pairs: Vec<(usize, usize)>,
    index: std::collections::HashMap<(usize, usize), usize>,
}

impl PairIndex {
    pub fn new(d: &MultiDigraph) -> Self {
        let pairs = d.flippable_pairs();
        let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        PairIndex { pairs, index }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Flip indicator of inverting `set`.
    pub fn indicator(&self, set: &[usize]) -> Bits {
        let mut b = Bits::zeros(self.pairs.len());
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if let Some(j) = self.get(u, v) {
                    b.set(j, true);
                }
            }
        }
        b
    }
}

/// Every candidate set in size order then lexicographic order, refusing
/// enumerations above [`CANDIDATE_LIMIT`].
pub(crate) fn candidate_sets(n: usize, p: usize, mode: SizeMode) -> Result<Vec<Vec<usize>>> {
    let sizes = candidate_sizes(n, p, mode);
    let total: u128 = sizes.iter().map(|&s| binomial(n, s)).sum();
    if total > CANDIDATE_LIMIT {
        return unsupported(format!("{total} candidate sets exceed the enumeration limit"));
    }
    Ok(sizes.into_iter().flat_map(|s| (0..n).combinations(s)).collect())
}
