use std::collections::HashSet;

use super::{candidate_sets, PairIndex, SizeMode};
use crate::error::Result;
use crate::flow::{is_2k_edge_connected, FlowNet};
use crate::inversion::InversionFamily;
use crate::graph::MultiDigraph;

/// A minimum family of candidate sets making `d` k-arc-strong, or `None` if
/// every such family has more than `l_max` sets.
///
/// Iterative deepening over families without repeats. At each node a
/// violated dicut is fixed by branching on the candidates that reverse one
/// of its entering pairs (each later sibling excludes the earlier ones), and
/// the node is cut off when the total deficiency of all currently violated
/// dicuts exceeds what the remaining budget of sets could repair.
pub fn exact_inv_kp(d: &MultiDigraph, k: usize, p: usize, mode: SizeMode, l_max: usize) -> Result<Option<InversionFamily>> {
    if !is_2k_edge_connected(d, k) {
        return Ok(None);
    }
    exact_over(d, k, candidate_sets(d.n(), p, mode)?, l_max)
}

/// [`exact_inv_kp`] over an explicit list of candidate sets.
pub(crate) fn exact_over(d: &MultiDigraph, k: usize, sets: Vec<Vec<usize>>, l_max: usize) -> Result<Option<InversionFamily>> {
    let mut solver = Solver::new(d, k, sets);
    for budget in 0..=l_max {
        if solver.dfs(budget) {
            let mut sets: Vec<Vec<usize>> = solver.chosen.iter().map(|&c| solver.cands[c].set.clone()).collect();
            sets.sort();
            return Ok(Some(InversionFamily::new(sets)?));
        }
    }
    Ok(None)
}

struct Cand {
    set: Vec<usize>,
    pairs: Vec<usize>,
}

/// A dicut `S` (membership mask) that needs `def` more leaving arcs.
struct Deficit {
    side: Vec<bool>,
    def: usize,
}

struct Solver {
    n: usize,
    k: usize,
    fixed: Vec<(usize, usize, u32)>,
    var_pairs: Vec<(usize, usize)>,
    cur: Vec<(u32, u32)>,
    cands: Vec<Cand>,
    by_pair: Vec<Vec<usize>>,
    forbidden: Vec<bool>,
    chosen: Vec<usize>,
    stamp: Vec<u64>,
    epoch: u64,
}

impl Solver {
    fn new(d: &MultiDigraph, k: usize, sets: Vec<Vec<usize>>) -> Self {
        let index = PairIndex::new(d);
        let mut seen = HashSet::new();
        let mut cands = Vec::new();
        for set in sets {
            let ind = index.indicator(&set);
            if !ind.is_zero() && seen.insert(ind.clone()) {
                cands.push(Cand { set, pairs: ind.ones().collect() });
            }
        }
        let mut by_pair = vec![Vec::new(); index.len()];
        for (c, cand) in cands.iter().enumerate() {
            for &j in &cand.pairs {
                by_pair[j].push(c);
            }
        }
        let fixed = d
            .pairs()
            .into_iter()
            .filter(|&(_, _, a, b)| a == b)
            .flat_map(|(u, v, a, b)| [(u, v, a), (v, u, b)])
            .collect();
        let cur = index.pairs.iter().map(|&(u, v)| (d.multiplicity(u, v), d.multiplicity(v, u))).collect();
        let count = cands.len();
        Solver {
            n: d.n(),
            k,
            fixed,
            var_pairs: index.pairs,
            cur,
            cands,
            by_pair,
            forbidden: vec![false; count],
            chosen: Vec::new(),
            stamp: vec![0; count],
            epoch: 0,
        }
    }

    fn arcs(&self) -> Vec<(usize, usize, u32)> {
        let mut arcs = self.fixed.clone();
        for (&(u, v), &(a, b)) in self.var_pairs.iter().zip(&self.cur) {
            arcs.push((u, v, a));
            arcs.push((v, u, b));
        }
        arcs.retain(|a| a.2 > 0);
        arcs
    }

    fn deficits(&self) -> Vec<Deficit> {
        let (n, k) = (self.n, self.k);
        if n <= 1 {
            return Vec::new();
        }
        let arcs = self.arcs();
        let mut outd = vec![0usize; n];
        let mut ind = vec![0usize; n];
        for &(u, v, m) in &arcs {
            outd[u] += m as usize;
            ind[v] += m as usize;
        }
        let mut out = Vec::new();
        for v in 0..n {
            if outd[v] < k {
                let mut side = vec![false; n];
                side[v] = true;
                out.push(Deficit { side, def: k - outd[v] });
            }
            if ind[v] < k {
                let mut side = vec![true; n];
                side[v] = false;
                out.push(Deficit { side, def: k - ind[v] });
            }
        }
        if out.is_empty() {
            let mut net = FlowNet::directed(n, arcs.iter().copied());
            for v in 1..n {
                for (s, t) in [(0, v), (v, 0)] {
                    let f = net.max_flow(s, t, k);
                    if f < k {
                        out.push(Deficit { side: net.residual_side(s), def: k - f });
                        return out;
                    }
                }
            }
        }
        out
    }

    fn flip(&mut self, c: usize) {
        for &j in &self.cands[c].pairs {
            let (a, b) = self.cur[j];
            self.cur[j] = (b, a);
        }
    }

    fn dfs(&mut self, budget: usize) -> bool {
        let deficits = self.deficits();
        if deficits.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        // Positive gains of reversing each pair, per violated dicut.
        let mut gains: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.var_pairs.len()];
        for (ci, cut) in deficits.iter().enumerate() {
            for (j, (&(u, v), &(a, b))) in self.var_pairs.iter().zip(&self.cur).enumerate() {
                let gain = match (cut.side[u], cut.side[v]) {
                    (true, false) => b as i64 - a as i64,
                    (false, true) => a as i64 - b as i64,
                    _ => 0,
                };
                if gain > 0 {
                    gains[j].push((ci, gain as u32));
                }
            }
        }
        self.epoch += 1;
        let mut hitting: Vec<Vec<usize>> = vec![Vec::new(); deficits.len()];
        let mut max_cap = 0usize;
        let mut sums = vec![0usize; deficits.len()];
        for j in 0..gains.len() {
            if gains[j].is_empty() {
                continue;
            }
            for &c in &self.by_pair[j] {
                if self.forbidden[c] || self.stamp[c] == self.epoch {
                    continue;
                }
                self.stamp[c] = self.epoch;
                sums.iter_mut().for_each(|s| *s = 0);
                for &q in &self.cands[c].pairs {
                    for &(ci, g) in &gains[q] {
                        sums[ci] += g as usize;
                    }
                }
                let mut cap = 0;
                for (ci, &s) in sums.iter().enumerate() {
                    if s > 0 {
                        hitting[ci].push(c);
                        cap += s.min(deficits[ci].def);
                    }
                }
                max_cap = max_cap.max(cap);
            }
        }
        let total: usize = deficits.iter().map(|d| d.def).sum();
        if max_cap == 0 || total.div_ceil(max_cap) > budget {
            return false;
        }
        let pick = (0..deficits.len()).min_by_key(|&ci| hitting[ci].len()).expect("nonempty");
        let mut branch = std::mem::take(&mut hitting[pick]);
        branch.sort_unstable();
        let mut excluded = Vec::new();
        let mut found = false;
        for c in branch {
            self.forbidden[c] = true;
            excluded.push(c);
            self.flip(c);
            self.chosen.push(c);
            if self.dfs(budget - 1) {
                found = true;
                break;
            }
            self.chosen.pop();
            self.flip(c);
        }
        for c in excluded {
            self.forbidden[c] = false;
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::is_k_arc_strong;
    use crate::inversion::apply_inversions;

    #[test]
    fn strong_input_needs_nothing() {
        let d = MultiDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(exact_inv_kp(&d, 1, 2, SizeMode::Exact, 3).unwrap(), Some(InversionFamily::empty()));
    }

    #[test]
    fn transitive_triangle_needs_one_pair() {
        let d = MultiDigraph::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let f = exact_inv_kp(&d, 1, 2, SizeMode::Exact, 3).unwrap().unwrap();
        assert_eq!(f.len(), 1);
        assert!(is_k_arc_strong(&apply_inversions(&d, &f).unwrap(), 1));
    }

    #[test]
    fn budget_too_small_gives_none() {
        let d = MultiDigraph::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(exact_inv_kp(&d, 1, 2, SizeMode::Exact, 0).unwrap(), None);
    }
}
