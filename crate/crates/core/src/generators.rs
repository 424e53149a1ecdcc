//! Seeded random instances and fixed test families.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flow::{global_min_cut, is_2k_edge_connected};
use crate::graph::{MultiDigraph, Multigraph};
use crate::oracles::Hypergraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each unordered pair carries arcs with probability `density`; such a
/// pair becomes a digon with probability `digon`, otherwise a single arc
/// in a uniformly random direction.
pub fn random_digraph(rng: &mut impl Rng, n: usize, density: f64, digon: f64) -> MultiDigraph {
    let mut d = MultiDigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                if rng.gen_bool(digon) {
                    d.add_arc(u, v).unwrap();
                    d.add_arc(v, u).unwrap();
                } else if rng.gen_bool(0.5) {
                    d.add_arc(u, v).unwrap();
                } else {
                    d.add_arc(v, u).unwrap();
                }
            }
        }
    }
    d
}

/// Arcs in both directions are drawn independently, with multiplicities
/// up to `max_mult`.
pub fn random_multidigraph(rng: &mut impl Rng, n: usize, density: f64, max_mult: u32) -> MultiDigraph {
    let mut d = MultiDigraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                d.add_arcs(u, v, rng.gen_range(1..=max_mult)).unwrap();
            }
        }
    }
    d
}

pub fn random_multigraph(rng: &mut impl Rng, n: usize, density: f64, max_mult: u32) -> Multigraph {
    let mut g = Multigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edges(u, v, rng.gen_range(1..=max_mult)).unwrap();
            }
        }
    }
    g
}

/// Adds random arcs across minimum cuts of a random digraph until its
/// underlying multigraph is `2k`-edge-connected. Added arcs go to
/// non-adjacent pairs when possible and otherwise complete digons, so the
/// result is a digraph; `None` if even the complete biorientation fails.
pub fn random_2k_edge_connected_digraph(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    density: f64,
    digon: f64,
) -> Option<MultiDigraph> {
    let mut d = random_digraph(rng, n, density, digon);
    while !is_2k_edge_connected(&d, k) {
        let (_, side) = global_min_cut(&d.underlying())?;
        let mut inside = vec![false; n];
        side.iter().for_each(|&v| inside[v] = true);
        let crossing: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| inside[u] && !inside[v]).collect();
        let empty: Vec<_> = crossing.iter().copied().filter(|&(u, v)| !d.has_arc(u, v) && !d.has_arc(v, u)).collect();
        let pick = if let Some(&(u, v)) = empty.choose(rng) {
            if rng.gen_bool(0.5) { (u, v) } else { (v, u) }
        } else {
            let open: Vec<_> = crossing
                .iter()
                .flat_map(|&(u, v)| [(u, v), (v, u)])
                .filter(|&(u, v)| !d.has_arc(u, v))
                .collect();
            *open.choose(rng)?
        };
        d.add_arc(pick.0, pick.1).unwrap();
    }
    Some(d)
}

/// A random subset of `0..n` of size `size`.
pub fn random_subset(rng: &mut impl Rng, n: usize, size: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size);
    all.sort_unstable();
    all
}

/// A simple bipartite graph with sides `0..a` and `a..a+b`, each cross pair
/// present with probability `density`.
pub fn random_bipartite_graph(rng: &mut impl Rng, a: usize, b: usize, density: f64) -> Multigraph {
    let mut g = Multigraph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// `m` distinct random `s`-subsets of `0..n` (fewer if there are not that
/// many).
pub fn random_uniform_hypergraph(rng: &mut impl Rng, n: usize, s: usize, m: usize) -> Hypergraph {
    let mut all: Vec<Vec<usize>> = (0..n).combinations(s).collect();
    all.shuffle(rng);
    all.truncate(m);
    all.sort();
    Hypergraph { n, edges: all }
}

/// The star-matching 1-obstruction on `2m+1` vertices: vertex 0 is joined
/// to every other vertex, and `2i−1 → 2i` for `i = 1..=m`. Star arcs leave
/// vertex 0, except `1 → 0` when `m` is even, so that `d⁺(X) − m` is odd.
pub fn star_matching_obstruction(m: usize) -> MultiDigraph {
    let n = 2 * m + 1;
    let mut d = MultiDigraph::new(n);
    for x in 1..n {
        if m % 2 == 0 && x == 1 {
            d.add_arc(1, 0).unwrap();
        } else {
            d.add_arc(0, x).unwrap();
        }
    }
    for i in 1..=m {
        d.add_arc(2 * i - 1, 2 * i).unwrap();
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_generator_reaches_target() {
        let mut r = rng(7);
        for k in 1..=2 {
            let d = random_2k_edge_connected_digraph(&mut r, 8, k, 0.3, 0.1).unwrap();
            assert!(d.is_digraph() && is_2k_edge_connected(&d, k));
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_multidigraph(&mut rng(3), 6, 0.4, 3);
        let b = random_multidigraph(&mut rng(3), 6, 0.4, 3);
        assert_eq!(a, b);
    }
}
