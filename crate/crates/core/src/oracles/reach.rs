use std::collections::{HashSet, VecDeque};

use super::{candidate_sets, PairIndex, SizeMode};
use crate::error::{unsupported, Result};
use crate::flow::is_k_arc_strong;
use crate::gf2::{Bits, Span};
use crate::inversion::{apply_inversions, invert, push, InversionFamily};
use crate::graph::MultiDigraph;
use crate::search::{OrientationSearch, Variable};

/// Decides whether some family of candidate sets, of any cardinality, makes
/// `d` k-arc-strong, and returns one.
///
/// Inversions commute and are involutions, so the reachable digraphs are
/// exactly `d` with the flip pattern of some GF(2) combination of candidate
/// indicators applied. The search ranges over orientations of the flippable
/// pairs restricted by the parity checks of that span.
pub fn gf2_reachable(d: &MultiDigraph, k: usize, p: usize, mode: SizeMode) -> Result<Option<InversionFamily>> {
    let n = d.n();
    let pairs = PairIndex::new(d);
    let candidates = candidate_sets(n, p, mode)?;
    let mut span = Span::new(pairs.len());
    let mut inputs = Vec::new();
    for (ci, set) in candidates.iter().enumerate() {
        if span.is_full() {
            break;
        }
        let ind = pairs.indicator(set);
        if !ind.is_zero() {
            inputs.push(ci);
            span.add(&ind);
        }
    }
    let fixed = d
        .pairs()
        .into_iter()
        .filter(|&(_, _, a, b)| a == b)
        .flat_map(|(u, v, a, b)| [(u, v, a), (v, u, b)])
        .collect();
    let vars = pairs
        .pairs
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (d.multiplicity(u, v), d.multiplicity(v, u));
            Variable { u, v, options: vec![(a, b), (b, a)] }
        })
        .collect();
    let parity = span.complement().into_iter().map(|h| (h, false)).collect();
    let search = OrientationSearch { n, k, fixed, vars, parity };
    let Some(choice) = search.solve() else {
        return Ok(None);
    };
    let mut target = Bits::zeros(pairs.len());
    for (i, &o) in choice.iter().enumerate() {
        target.set(i, o == 1);
    }
    let combo = span.express(&target).expect("search respects the parity checks");
    let family = InversionFamily::new(combo.into_iter().map(|id| candidates[inputs[id]].clone()))?;
    debug_assert!(is_k_arc_strong(&apply_inversions(d, &family)?, k));
    Ok(Some(family))
}

/// Largest order accepted by [`bfs_reachable`].
pub const BFS_LIMIT: usize = 7;

/// Breadth-first search over the digraphs reachable from `d` by single
/// candidate inversions; whether one of them is k-arc-strong.
pub fn bfs_reachable(d: &MultiDigraph, k: usize, p: usize, mode: SizeMode) -> Result<bool> {
    if d.n() > BFS_LIMIT {
        return unsupported(format!("breadth-first reachability is limited to n ≤ {BFS_LIMIT}"));
    }
    let candidates = candidate_sets(d.n(), p, mode)?;
    let mut seen = HashSet::from([d.clone()]);
    let mut queue = VecDeque::from([d.clone()]);
    while let Some(cur) = queue.pop_front() {
        if is_k_arc_strong(&cur, k) {
            return Ok(true);
        }
        for set in &candidates {
            let next = invert(&cur, set)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Largest order accepted by [`strong_pushing_bruteforce`].
pub const PUSH_LIMIT: usize = 15;

/// A smallest vertex set whose pushing makes `d` strongly connected, trying
/// sets by size and then lexicographically.
pub fn strong_pushing_bruteforce(d: &MultiDigraph) -> Result<Option<Vec<usize>>> {
    let n = d.n();
    if n > PUSH_LIMIT {
        return unsupported(format!("brute-force pushing is limited to n ≤ {PUSH_LIMIT}"));
    }
    for size in 0..=n {
        for set in itertools::Itertools::combinations(0..n, size) {
            if is_k_arc_strong(&push(d, &set)?, 1) {
                return Ok(Some(set));
            }
        }
    }
    Ok(None)
}
