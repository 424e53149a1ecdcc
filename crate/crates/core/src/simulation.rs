//! Rewriting inversions of 2, 3 or 5 vertices as families of inversions of
//! exactly `p` vertices.
//!
//! Every plan is exact: applying its sets to the digraph it was built for
//! gives the same digraph as inverting the target alone. Plans compose by
//! symmetric difference because inversions commute and are involutions.

use itertools::Itertools;

use crate::error::{invalid, precondition, unsupported, Result};
use crate::gf2::{Bits, Span};
use crate::graph::{MultiDigraph, Multigraph};
use crate::inversion::{apply_inversions, invert, InversionFamily};
use crate::oracles::{binomial, CANDIDATE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationPlan {
    pub target: Vec<usize>,
    pub p: usize,
    pub sets: InversionFamily,
}

impl SimulationPlan {
    /// Whether the plan reproduces the inversion of its target on `d`.
    pub fn verify(&self, d: &MultiDigraph) -> Result<bool> {
        Ok(self.sets.all_of_size(self.p) && apply_inversions(d, &self.sets)? == invert(d, &self.target)?)
    }

    fn new(target: &[usize], p: usize, sets: InversionFamily) -> Self {
        let mut target = target.to_vec();
        target.sort_unstable();
        SimulationPlan { target, p, sets: sets.canonical() }
    }
}

fn check_set(d: &MultiDigraph, set: &[usize], size: usize) -> Result<Vec<usize>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != size || s.iter().any(|&v| v >= d.n()) {
        return invalid(format!("expected {size} distinct vertices below {}, got {set:?}", d.n()));
    }
    Ok(s)
}

fn need_order(d: &MultiDigraph, p: usize) -> Result<()> {
    if d.n() < p + 2 {
        return precondition(format!("simulation needs n ≥ p+2 = {}, got {}", p + 2, d.n()));
    }
    Ok(())
}

/// The first `count` vertices outside `avoid`.
fn first_outside(n: usize, avoid: &[usize], count: usize) -> Vec<usize> {
    (0..n).filter(|v| !avoid.contains(v)).take(count).collect()
}

/// `{X' ∪ base : X' ⊆ aux, |X'| = |aux| − 2}`.
fn extend_by_subsets(base: &[usize], aux: &[usize]) -> InversionFamily {
    let sets = aux.iter().copied().combinations(aux.len() - 2).map(|sub| {
        let mut s = base.to_vec();
        s.extend(sub);
        s
    });
    InversionFamily::new(sets).expect("sets have at least three vertices")
}

/// Three pairwise non-adjacent vertices of the underlying graph, the
/// lexicographically smallest when `n ≤ 30`.
pub fn independent_triple(g: &Multigraph) -> Option<[usize; 3]> {
    let n = g.n();
    let adj = |u: usize, v: usize| g.multiplicity(u, v) > 0;
    if n <= 30 {
        return (0..n).tuple_combinations().find(|&(a, b, c)| !adj(a, b) && !adj(a, c) && !adj(b, c)).map(|(a, b, c)| [a, b, c]);
    }
    // Greedy from every start vertex: first non-neighbour, then the first
    // vertex missing both.
    for a in 0..n {
        for b in (a + 1..n).filter(|&b| !adj(a, b)) {
            if let Some(c) = (b + 1..n).find(|&c| !adj(a, c) && !adj(b, c)) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Simulates inverting the 3-set `s` with inversions of odd size `p`.
///
/// For `p ≡ 3 (mod 4)` the plan is every `(p−3)`-subset of a fixed
/// `(p−1)`-set outside `s`, joined with `s`. For `p ≡ 1 (mod 4)` it is
/// assembled from quintuple plans around an independent triple.
pub fn simulate_triple(d: &MultiDigraph, s: &[usize], p: usize) -> Result<SimulationPlan> {
    let s = check_set(d, s, 3)?;
    if p < 3 || p % 2 == 0 {
        return invalid(format!("triple simulation needs odd p ≥ 3, got {p}"));
    }
    if p == 3 {
        return Ok(SimulationPlan::new(&s, 3, InversionFamily::new([s.clone()])?));
    }
    need_order(d, p)?;
    if p % 4 == 3 {
        let aux = first_outside(d.n(), &s, p - 1);
        return Ok(SimulationPlan::new(&s, p, extend_by_subsets(&s, &aux)));
    }
    let Some(ind) = independent_triple(&d.underlying()) else {
        return unsupported("no independent triple found in the underlying graph");
    };
    let sets = triple_mod1(d, &s, &ind, p)?;
    Ok(SimulationPlan::new(&s, p, sets))
}

/// Case analysis on `|S ∩ I|` for an independent triple `I`, where inverting
/// `I` is the identity.
fn triple_mod1(d: &MultiDigraph, s: &[usize], ind: &[usize; 3], p: usize) -> Result<InversionFamily> {
    let n = d.n();
    let common = s.iter().filter(|v| ind.contains(v)).count();
    let union: Vec<usize> = s.iter().chain(ind).copied().unique().collect();
    Ok(match common {
        3 => InversionFamily::empty(),
        0 => simulate_disjoint_triples(d, ind, s, p)?.sets,
        2 => {
            let other = first_outside(n, &union, 3);
            let a = simulate_disjoint_triples(d, ind, &other, p)?.sets;
            let b = simulate_disjoint_triples(d, s, &other, p)?.sets;
            a.symmetric_difference(&b)
        }
        _ => {
            // S' = (I∖S) ∪ {w} meets I in two vertices and misses S.
            let w = first_outside(n, &union, 1)[0];
            let mut other: Vec<usize> = ind.iter().copied().filter(|v| !s.contains(v)).collect();
            other.push(w);
            other.sort_unstable();
            let a = triple_mod1(d, &other, ind, p)?;
            let b = simulate_disjoint_triples(d, s, &other, p)?.sets;
            a.symmetric_difference(&b)
        }
    })
}

/// Simulates inverting the 5-set `r` with inversions of size `p ≡ 1 (mod 4)`:
/// every `(p−5)`-subset of a fixed `(p−3)`-set outside `r`, joined with `r`.
pub fn simulate_quintuple(d: &MultiDigraph, r: &[usize], p: usize) -> Result<SimulationPlan> {
    let r = check_set(d, r, 5)?;
    if p < 5 || p % 4 != 1 {
        return invalid(format!("quintuple simulation needs p ≡ 1 (mod 4), p ≥ 5, got {p}"));
    }
    if p == 5 {
        return Ok(SimulationPlan::new(&r, 5, InversionFamily::new([r.clone()])?));
    }
    need_order(d, p)?;
    let aux = first_outside(d.n(), &r, p - 3);
    Ok(SimulationPlan::new(&r, p, extend_by_subsets(&r, &aux)))
}

/// Simulates inverting the disjoint triples `r` and `r2` together, via the
/// three quintuples `(R∖u) ∪ R'`.
pub fn simulate_disjoint_triples(d: &MultiDigraph, r: &[usize], r2: &[usize], p: usize) -> Result<SimulationPlan> {
    let r = check_set(d, r, 3)?;
    let r2 = check_set(d, r2, 3)?;
    if r.iter().any(|v| r2.contains(v)) {
        return invalid(format!("triples {r:?} and {r2:?} overlap"));
    }
    let mut sets = InversionFamily::empty();
    for &u in &r {
        let five: Vec<usize> = r.iter().copied().filter(|&v| v != u).chain(r2.iter().copied()).collect();
        sets = sets.symmetric_difference(&simulate_quintuple(d, &five, p)?.sets);
    }
    let target: Vec<usize> = r.iter().chain(&r2).copied().collect();
    Ok(SimulationPlan::new(&target, p, sets))
}

/// Pairs whose inversion changes the digraph, restricted to `window`.
fn sensitive_pairs(d: &MultiDigraph, window: &[usize]) -> Vec<(usize, usize)> {
    window
        .iter()
        .copied()
        .tuple_combinations()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .filter(|&(u, v)| d.multiplicity(u, v) != d.multiplicity(v, u))
        .collect()
}

/// Simulates inverting the pair `e` with inversions of even size `p`.
///
/// A window of `p+2` vertices holding `e` and a pair whose inversion is
/// invisible (a digon or a non-adjacent pair) is searched by a GF(2) solve
/// over its `p`-subsets; the window grows one vertex at a time on failure.
pub fn simulate_pair(d: &MultiDigraph, e: &[usize], p: usize) -> Result<SimulationPlan> {
    let e = check_set(d, e, 2)?;
    if p < 2 || p % 2 == 1 {
        return invalid(format!("pair simulation needs even p ≥ 2, got {p}"));
    }
    let (a, b) = (e[0], e[1]);
    if p == 2 {
        return Ok(SimulationPlan::new(&e, 2, InversionFamily::new([e.clone()])?));
    }
    if d.multiplicity(a, b) == d.multiplicity(b, a) {
        return Ok(SimulationPlan::new(&e, p, InversionFamily::empty()));
    }
    need_order(d, p)?;
    let n = d.n();
    let quiet = |u: usize, v: usize| d.multiplicity(u, v) == d.multiplicity(v, u);
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().filter(|&(u, v)| quiet(u, v)).collect();
    let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| !e.contains(&u) && !e.contains(&v)).or(pairs.first()) else {
        return unsupported("no digon or non-adjacent pair to anchor the simulation");
    };
    let mut window: Vec<usize> = [a, b, u, v].into_iter().unique().collect();
    let rest = first_outside(n, &window, n);
    let mut rest = rest.into_iter();
    while window.len() < p + 2 {
        window.push(rest.next().expect("n ≥ p+2"));
    }
    loop {
        if binomial(window.len(), p) > CANDIDATE_LIMIT {
            return unsupported("pair simulation window exceeds the enumeration limit");
        }
        if let Some(sets) = solve_window(d, &e, &window, p) {
            let plan = SimulationPlan::new(&e, p, sets);
            debug_assert!(plan.verify(d).unwrap_or(false));
            return Ok(plan);
        }
        match rest.next() {
            Some(w) => window.push(w),
            None => return unsupported("no simulating family found on the whole vertex set"),
        }
    }
}

fn solve_window(d: &MultiDigraph, e: &[usize], window: &[usize], p: usize) -> Option<InversionFamily> {
    let mut window = window.to_vec();
    window.sort_unstable();
    let pairs = sensitive_pairs(d, &window);
    let index = |u: usize, v: usize| pairs.binary_search(&(u.min(v), u.max(v))).ok();
    let subsets: Vec<Vec<usize>> = window.iter().copied().combinations(p).collect();
    let mut span = Span::new(pairs.len());
    for set in &subsets {
        let mut ind = Bits::zeros(pairs.len());
        for (u, v) in set.iter().copied().tuple_combinations() {
            if let Some(j) = index(u, v) {
                ind.set(j, true);
            }
        }
        span.add(&ind);
    }
    let mut target = Bits::zeros(pairs.len());
    target.set(index(e[0], e[1])?, true);
    let combo = span.express(&target)?;
    Some(InversionFamily::new(combo.into_iter().map(|i| subsets[i].clone())).expect("p ≥ 2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_digraph, rng};

    #[test]
    fn p3_is_the_set_itself() {
        let d = MultiDigraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let plan = simulate_triple(&d, &[2, 0, 1], 3).unwrap();
        assert_eq!(plan.sets.sets(), &[vec![0, 1, 2]]);
        assert!(plan.verify(&d).unwrap());
    }

    #[test]
    fn p7_plan_has_fifteen_sets() {
        let mut r = rng(7);
        let d = random_digraph(&mut r, 9, 0.5, 0.2);
        let plan = simulate_triple(&d, &[1, 4, 8], 7).unwrap();
        assert_eq!(plan.sets.len(), 15);
        assert!(plan.verify(&d).unwrap());
    }

    #[test]
    fn p5_with_independent_triple() {
        // Arcs only inside {0..3}; 4..6 are isolated and independent.
        let d = MultiDigraph::from_arcs(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        for s in [[0, 1, 2], [0, 1, 4], [0, 4, 5], [4, 5, 6], [1, 5, 3]] {
            let plan = simulate_triple(&d, &s, 5).unwrap();
            assert!(plan.verify(&d).unwrap(), "{s:?}");
        }
        let full = MultiDigraph::from_arcs(7, (0..7).tuple_combinations()).unwrap();
        assert!(matches!(simulate_triple(&full, &[0, 1, 2], 5), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn quintuple_counts() {
        let d = MultiDigraph::new(11);
        assert_eq!(simulate_quintuple(&d, &[0, 1, 2, 3, 4], 5).unwrap().sets.len(), 1);
        assert_eq!(simulate_quintuple(&d, &[0, 1, 2, 3, 4], 9).unwrap().sets.len(), 15);
        let big = MultiDigraph::new(15);
        assert_eq!(simulate_quintuple(&big, &[0, 1, 2, 3, 4], 13).unwrap().sets.len(), 45);
    }

    #[test]
    fn disjoint_triples_are_inverted_together() {
        let mut r = rng(3);
        let d = random_digraph(&mut r, 7, 0.6, 0.1);
        let plan = simulate_disjoint_triples(&d, &[0, 1, 2], &[3, 4, 5], 5).unwrap();
        let expected = invert(&invert(&d, &[0, 1, 2]).unwrap(), &[3, 4, 5]).unwrap();
        assert_eq!(apply_inversions(&d, &plan.sets).unwrap(), expected);
        assert!(simulate_disjoint_triples(&d, &[0, 1, 2], &[2, 3, 4], 5).is_err());
    }

    #[test]
    fn pair_examples() {
        // Digon 4-5 disjoint from e = {0,1}.
        let d = MultiDigraph::from_arcs(6, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 4), (0, 4)]).unwrap();
        let plan = simulate_pair(&d, &[0, 1], 4).unwrap();
        assert!(plan.verify(&d).unwrap());
        assert!(simulate_pair(&d, &[4, 5], 4).unwrap().sets.is_empty());
        assert!(simulate_pair(&d, &[0, 1], 3).is_err());
        let t = crate::graph::rotative_tournament(7).unwrap();
        assert!(matches!(simulate_pair(&t, &[0, 1], 4), Err(crate::Error::Unsupported(_))));
    }
}
