//! Multidigraphs and multigraphs on the dense vertex range `0..n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Result};

/// Edge connectivity or arc-strength. A graph on at most one vertex has
/// connectivity `Infinite`, which compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lambda {
    Finite(usize),
    Infinite,
}

impl Lambda {
    pub fn at_least(self, k: usize) -> bool {
        self >= Lambda::Finite(k)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Lambda::Finite(v) => Some(v),
            Lambda::Infinite => None,
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Finite(v) => write!(f, "{v}"),
            Lambda::Infinite => write!(f, "inf"),
        }
    }
}

/// Directed multigraph without loops. Arcs are kept in an ordered-pair map
/// together with a reverse index, so multiplicity and digon queries are
/// logarithmic and neighbourhood scans are ordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiDigraph {
    n: usize,
    out: BTreeMap<(usize, usize), u32>,
    inc: BTreeMap<(usize, usize), u32>,
    total: usize,
}

impl MultiDigraph {
    pub fn new(n: usize) -> Self {
        MultiDigraph { n, ..Default::default() }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut d = MultiDigraph::new(n);
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of arcs counted with multiplicity.
    pub fn arc_count(&self) -> usize {
        self.total
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return invalid(format!("arc ({u},{v}) out of range for n={}", self.n));
        }
        if u == v {
            return invalid(format!("self-loop at {u}"));
        }
        Ok(())
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_arcs(u, v, 1)
    }

    pub fn add_arcs(&mut self, u: usize, v: usize, mult: u32) -> Result<()> {
        self.check_pair(u, v)?;
        if mult == 0 {
            return Ok(());
        }
        *self.out.entry((u, v)).or_insert(0) += mult;
        *self.inc.entry((v, u)).or_insert(0) += mult;
        self.total += mult as usize;
        Ok(())
    }

    /// Removes one copy of `u→v`; returns false if there was none.
    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        match self.out.get_mut(&(u, v)) {
            None => false,
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    self.out.remove(&(u, v));
                    self.inc.remove(&(v, u));
                } else {
                    *self.inc.get_mut(&(v, u)).expect("reverse index in sync") -= 1;
                }
                self.total -= 1;
                true
            }
        }
    }

    /// Replaces the multiplicities on the pair `{u,v}` by `(uv, vu)`.
    pub(crate) fn set_pair(&mut self, u: usize, v: usize, uv: u32, vu: u32) {
        for (a, b, m) in [(u, v, uv), (v, u, vu)] {
            let old = self.multiplicity(a, b);
            self.total = self.total + m as usize - old as usize;
            if m == 0 {
                self.out.remove(&(a, b));
                self.inc.remove(&(b, a));
            } else {
                self.out.insert((a, b), m);
                self.inc.insert((b, a), m);
            }
        }
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.out.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out.contains_key(&(u, v))
    }

    pub fn is_digon(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// Distinct arcs `(tail, head, multiplicity)` in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.out.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.out.range((u, 0)..(u + 1, 0)).map(|(&(_, v), &m)| (v, m))
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.inc.range((v, 0)..(v + 1, 0)).map(|(&(_, u), &m)| (u, m))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_neighbors(u).map(|(_, m)| m as usize).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).map(|(_, m)| m as usize).sum()
    }

    /// All multiplicities are at most one.
    pub fn is_digraph(&self) -> bool {
        self.out.values().all(|&m| m == 1)
    }

    /// A digraph without digons.
    pub fn is_oriented(&self) -> bool {
        self.is_digraph() && self.out.keys().all(|&(u, v)| !self.has_arc(v, u))
    }

    /// Unordered pairs `{u,v}` (u < v) carrying at least one arc, with
    /// multiplicities `(μ(u→v), μ(v→u))`.
    pub fn pairs(&self) -> Vec<(usize, usize, u32, u32)> {
        let mut seen = BTreeMap::new();
        for (u, v, _) in self.arcs() {
            let key = (u.min(v), u.max(v));
            seen.entry(key).or_insert(());
        }
        seen.into_keys()
            .map(|(u, v)| (u, v, self.multiplicity(u, v), self.multiplicity(v, u)))
            .collect()
    }

    /// Pairs whose inversion changes the digraph: `μ(u→v) ≠ μ(v→u)`.
    pub fn flippable_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter(|&(_, _, a, b)| a != b)
            .map(|(u, v, _, _)| (u, v))
            .collect()
    }

    pub fn reversed(&self) -> MultiDigraph {
        let mut r = MultiDigraph::new(self.n);
        for (u, v, m) in self.arcs() {
            r.add_arcs(v, u, m).expect("valid arc");
        }
        r
    }

    pub fn underlying(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for (u, v, m) in self.arcs() {
            g.add_edges(u, v, m).expect("valid arc");
        }
        g
    }

    /// d⁺(S) for the vertex set given as a membership mask.
    pub fn out_cut(&self, side: &[bool]) -> usize {
        self.arcs()
            .filter(|&(u, v, _)| side[u] && !side[v])
            .map(|(_, _, m)| m as usize)
            .sum()
    }

    pub fn in_cut(&self, side: &[bool]) -> usize {
        self.arcs()
            .filter(|&(u, v, _)| !side[u] && side[v])
            .map(|(_, _, m)| m as usize)
            .sum()
    }

    /// Induced subdigraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> MultiDigraph {
        let index = position_map(self.n, vertices);
        let mut d = MultiDigraph::new(vertices.len());
        for (u, v, m) in self.arcs() {
            if let (Some(a), Some(b)) = (index[u], index[v]) {
                d.add_arcs(a, b, m).expect("valid arc");
            }
        }
        d
    }

    /// Disjoint union with `other`, whose vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &MultiDigraph) -> MultiDigraph {
        let mut d = self.clone();
        d.n += other.n;
        for (u, v, m) in other.arcs() {
            d.add_arcs(u + self.n, v + self.n, m).expect("valid arc");
        }
        d
    }

    /// Appends `count` isolated vertices and returns the first new index.
    pub fn add_vertices(&mut self, count: usize) -> usize {
        let first = self.n;
        self.n += count;
        first
    }
}

/// Undirected multigraph without loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    n: usize,
    // Both orientations of every edge are stored so neighbourhoods are ranges.
    adj: BTreeMap<(usize, usize), u32>,
    total: usize,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, ..Default::default() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.total
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_edges(u, v, 1)
    }

    pub fn add_edges(&mut self, u: usize, v: usize, mult: u32) -> Result<()> {
        if u >= self.n || v >= self.n {
            return invalid(format!("edge ({u},{v}) out of range for n={}", self.n));
        }
        if u == v {
            return invalid(format!("self-loop at {u}"));
        }
        if mult == 0 {
            return Ok(());
        }
        *self.adj.entry((u, v)).or_insert(0) += mult;
        *self.adj.entry((v, u)).or_insert(0) += mult;
        self.total += mult as usize;
        Ok(())
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.adj.get(&(u, v)).copied().unwrap_or(0)
    }

    /// Distinct edges `(u, v, μ)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.adj.iter().filter(|(&(u, v), _)| u < v).map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.adj.range((u, 0)..(u + 1, 0)).map(|(&(_, v), &m)| (v, m))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).map(|(_, m)| m as usize).sum()
    }

    /// d(S) for the vertex set given as a membership mask.
    pub fn cut(&self, side: &[bool]) -> usize {
        self.edges()
            .filter(|&(u, v, _)| side[u] != side[v])
            .map(|(_, _, m)| m as usize)
            .sum()
    }

    pub fn cut_of(&self, set: &[usize]) -> usize {
        self.cut(&mask(self.n, set))
    }

    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let index = position_map(self.n, vertices);
        let mut g = Multigraph::new(vertices.len());
        for (u, v, m) in self.edges() {
            if let (Some(a), Some(b)) = (index[u], index[v]) {
                g.add_edges(a, b, m).expect("valid edge");
            }
        }
        g
    }

    /// Number of edges (with multiplicity) with both ends in `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let m = mask(self.n, set);
        self.edges()
            .filter(|&(u, v, _)| m[u] && m[v])
            .map(|(_, _, mu)| mu as usize)
            .sum()
    }

    /// Contracts each block of `blocks` (which must partition the vertex
    /// range) to one vertex, dropping loops.
    pub fn contract(&self, blocks: &[Vec<usize>]) -> Multigraph {
        let mut owner = vec![usize::MAX; self.n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                owner[v] = i;
            }
        }
        let mut g = Multigraph::new(blocks.len());
        for (u, v, m) in self.edges() {
            let (a, b) = (owner[u], owner[v]);
            if a != b {
                g.add_edges(a, b, m).expect("valid edge");
            }
        }
        g
    }

    /// Proper 2-colouring, if the graph is bipartite; colour 0 contains the
    /// smallest vertex of each component.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for (v, _) in self.neighbors(u) {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        stack.push(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }
}

/// A dicut of a multidigraph together with its sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side: Vec<usize>,
    pub out_size: usize,
    pub in_size: usize,
    pub undirected_size: usize,
}

impl Cut {
    pub fn of(d: &MultiDigraph, side: &[usize]) -> Cut {
        let m = mask(d.n(), side);
        let out_size = d.out_cut(&m);
        let in_size = d.in_cut(&m);
        Cut { side: side.to_vec(), out_size, in_size, undirected_size: out_size + in_size }
    }
}

pub fn mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

pub fn members(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

fn position_map(n: usize, vertices: &[usize]) -> Vec<Option<usize>> {
    let mut index = vec![None; n];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = Some(i);
    }
    index
}

/// Rotative tournament on `m` vertices (`m` odd): `i → i+j mod m` for
/// `j = 1..=(m-1)/2`. It is `(m-1)/2`-arc-strong.
pub fn rotative_tournament(m: usize) -> Result<MultiDigraph> {
    if m % 2 == 0 {
        return invalid(format!("rotative tournament needs an odd order, got {m}"));
    }
    let mut d = MultiDigraph::new(m);
    for i in 0..m {
        for j in 1..=(m - 1) / 2 {
            d.add_arc(i, (i + j) % m)?;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digon_underlying_is_double_edge() {
        let d = MultiDigraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(d.underlying().multiplicity(0, 1), 2);
        assert!(d.is_digraph());
        assert!(!d.is_oriented());
    }

    #[test]
    fn empty_and_triangle_underlying() {
        let e = MultiDigraph::new(3).underlying();
        assert_eq!((e.n(), e.edge_count()), (3, 0));
        let t = MultiDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap().underlying();
        assert!(t.edges().all(|(_, _, m)| m == 1));
        assert_eq!(t.edge_count(), 3);
    }

    #[test]
    fn loops_and_range_rejected() {
        let mut d = MultiDigraph::new(2);
        assert!(d.add_arc(0, 0).is_err());
        assert!(d.add_arc(0, 2).is_err());
    }

    #[test]
    fn remove_and_set_pair_keep_index() {
        let mut d = MultiDigraph::new(3);
        d.add_arcs(0, 1, 2).unwrap();
        assert!(d.remove_arc(0, 1));
        assert_eq!(d.in_neighbors(1).collect::<Vec<_>>(), vec![(0, 1)]);
        d.set_pair(0, 1, 0, 3);
        assert_eq!((d.multiplicity(0, 1), d.multiplicity(1, 0), d.arc_count()), (0, 3, 3));
        assert!(!d.is_digraph());
    }

    #[test]
    fn bipartition_detects_odd_cycle() {
        let c4 = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.bipartition(), Some(vec![0, 1, 0, 1]));
        let k3 = Multigraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(k3.bipartition(), None);
    }
}
