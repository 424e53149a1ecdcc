//! Max-flow, edge connectivity and arc-strength kernels.
//!
//! All queries in this crate are threshold queries with small thresholds,
//! so the kernel is a plain augmenting-path flow that stops as soon as the
//! requested flow value is reached.

use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::graph::{mask, members, Cut, Lambda, MultiDigraph, Multigraph};

/// Residual network with integer capacities. Edge `e` and `e ^ 1` are
/// mutual reverses.
#[derive(Clone, Debug)]
pub(crate) struct FlowNet {
    head: Vec<usize>,
    cap0: Vec<u32>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    pub(crate) fn new(n: usize) -> Self {
        FlowNet { head: Vec::new(), cap0: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub(crate) fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds `u→v` with capacity `c` forward and `back` backward.
    pub(crate) fn add(&mut self, u: usize, v: usize, c: u32, back: u32) {
        let e = self.head.len();
        self.head.extend([v, u]);
        self.cap0.extend([c, back]);
        self.adj[u].push(e);
        self.adj[v].push(e + 1);
    }

    pub(crate) fn directed(n: usize, arcs: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut f = FlowNet::new(n);
        for (u, v, c) in arcs {
            f.add(u, v, c, 0);
        }
        f.cap = f.cap0.clone();
        f
    }

    pub(crate) fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut f = FlowNet::new(n);
        for (u, v, c) in edges {
            f.add(u, v, c, c);
        }
        f.cap = f.cap0.clone();
        f
    }

    /// Maximum `s`-`t` flow, capped at `limit`.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.cap.clone_from(&self.cap0);
        let n = self.n();
        let mut flow = 0usize;
        let mut pred = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            pred[s] = usize::MAX - 1;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.head[e];
                    if self.cap[e] > 0 && pred[v] == usize::MAX {
                        pred[v] = e;
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut bottleneck = (limit - flow).min(u32::MAX as usize) as u32;
            let mut v = t;
            while v != s {
                let e = pred[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.head[e ^ 1];
            }
            flow += bottleneck as usize;
        }
        flow
    }

    /// Vertices reachable from `s` in the residual network of the last flow.
    /// When the flow stopped below its limit this is the source side of a
    /// minimum cut, and the inclusion-wise smallest one.
    pub(crate) fn residual_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Result of a maximum-flow computation with its minimum cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: usize,
    /// Source side of a minimum cut (contains `s`, avoids `t`).
    pub source_side: Vec<usize>,
}

fn check_terminals(n: usize, s: usize, t: usize) -> Result<()> {
    if s >= n || t >= n {
        return invalid(format!("terminal out of range for n={n}"));
    }
    if s == t {
        return invalid("source and sink coincide");
    }
    Ok(())
}

/// λ_D(s,t): the maximum number of arc-disjoint `s`-`t` paths.
pub fn max_flow_digraph(d: &MultiDigraph, s: usize, t: usize) -> Result<MaxFlow> {
    check_terminals(d.n(), s, t)?;
    let mut net = FlowNet::directed(d.n(), d.arcs());
    let value = net.max_flow(s, t, usize::MAX);
    Ok(MaxFlow { value, source_side: members(&net.residual_side(s)) })
}

/// λ_G(s,t): the maximum number of edge-disjoint `s`-`t` paths.
pub fn max_flow_graph(g: &Multigraph, s: usize, t: usize) -> Result<MaxFlow> {
    check_terminals(g.n(), s, t)?;
    let mut net = FlowNet::undirected(g.n(), g.edges());
    let value = net.max_flow(s, t, usize::MAX);
    Ok(MaxFlow { value, source_side: members(&net.residual_side(s)) })
}

/// Global minimum cut, or `None` when `n ≤ 1`. Among the cuts found by the
/// `n-1` flows from vertex 0 the lexicographically smallest side wins ties.
pub fn global_min_cut(g: &Multigraph) -> Option<(usize, Vec<usize>)> {
    if g.n() <= 1 {
        return None;
    }
    let mut net = FlowNet::undirected(g.n(), g.edges());
    let mut best: Option<(usize, Vec<usize>)> = None;
    for v in 1..g.n() {
        let bound = best.as_ref().map_or(usize::MAX, |b| b.0 + 1);
        let value = net.max_flow(0, v, bound);
        if value < bound {
            let side = members(&net.residual_side(0));
            let better = match &best {
                None => true,
                Some((bv, bs)) => value < *bv || side < *bs,
            };
            if better {
                best = Some((value, side));
            }
        }
    }
    best
}

/// λ(G), with `Infinite` for graphs on at most one vertex.
pub fn edge_connectivity(g: &Multigraph) -> Lambda {
    match global_min_cut(g) {
        None => Lambda::Infinite,
        Some((v, _)) => Lambda::Finite(v),
    }
}

/// Whether λ(G) ≥ k, stopping each flow at `k`.
pub fn is_k_edge_connected(g: &Multigraph, k: usize) -> bool {
    if g.n() <= 1 || k == 0 {
        return true;
    }
    let mut net = FlowNet::undirected(g.n(), g.edges());
    (1..g.n()).all(|v| net.max_flow(0, v, k) >= k)
}

/// Whether the underlying multigraph of `d` is `2k`-edge-connected.
pub fn is_2k_edge_connected(d: &MultiDigraph, k: usize) -> bool {
    is_k_edge_connected(&d.underlying(), 2 * k)
}

/// A dicut `S` with `d⁺(S) < k`, if one exists.
pub fn k_arc_strong_violation(d: &MultiDigraph, k: usize) -> Option<Cut> {
    let n = d.n();
    if n <= 1 || k == 0 {
        return None;
    }
    for v in 0..n {
        if d.out_degree(v) < k {
            return Some(Cut::of(d, &[v]));
        }
        if d.in_degree(v) < k {
            let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            return Some(Cut::of(d, &rest));
        }
    }
    let mut net = FlowNet::directed(n, d.arcs());
    for v in 1..n {
        if net.max_flow(0, v, k) < k {
            return Some(Cut::of(d, &members(&net.residual_side(0))));
        }
        if net.max_flow(v, 0, k) < k {
            return Some(Cut::of(d, &members(&net.residual_side(v))));
        }
    }
    None
}

/// Every dicut has at least `k` arcs.
pub fn is_k_arc_strong(d: &MultiDigraph, k: usize) -> bool {
    k_arc_strong_violation(d, k).is_none()
}

/// Accelerated check given a vertex set `core` that induces a
/// k-arc-strong subdigraph: with `core` contracted to one vertex, `d` is
/// k-arc-strong iff every other vertex sends and receives `k` arc-disjoint
/// paths to and from the contracted vertex.
pub fn is_k_arc_strong_with_core(d: &MultiDigraph, k: usize, core: &[usize]) -> Result<bool> {
    if core.is_empty() {
        return invalid("core must be nonempty");
    }
    if core.iter().any(|&v| v >= d.n()) {
        return invalid("core vertex out of range");
    }
    if !is_k_arc_strong(&d.induced(core), k) {
        return invalid("supplied core does not induce a k-arc-strong subdigraph");
    }
    let in_core = mask(d.n(), core);
    let rep = core[0];
    let target = |v: usize| if in_core[v] { rep } else { v };
    let arcs = d
        .arcs()
        .map(|(u, v, m)| (target(u), target(v), m))
        .filter(|&(u, v, _)| u != v);
    let mut net = FlowNet::directed(d.n(), arcs);
    for v in (0..d.n()).filter(|&v| !in_core[v]) {
        if net.max_flow(v, rep, k) < k || net.max_flow(rep, v, k) < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest `k` such that `d` is k-arc-strong (`Infinite` for `n ≤ 1`).
pub fn arc_strength(d: &MultiDigraph) -> Lambda {
    let n = d.n();
    if n <= 1 {
        return Lambda::Infinite;
    }
    let mut net = FlowNet::directed(n, d.arcs());
    let mut best = usize::MAX;
    for v in 1..n {
        best = best.min(net.max_flow(0, v, best));
        best = best.min(net.max_flow(v, 0, best));
    }
    Lambda::Finite(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rotative_tournament;

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn flow_examples() {
        let e = Multigraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(max_flow_graph(&e, 0, 1).unwrap().value, 1);
        assert_eq!(max_flow_graph(&k4(), 1, 3).unwrap().value, 3);
        let c4 = MultiDigraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let f = max_flow_digraph(&c4, 0, 2).unwrap();
        assert_eq!(f.value, 1);
        assert_eq!(c4.out_cut(&mask(4, &f.source_side)), 1);
        assert!(max_flow_graph(&e, 1, 1).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(edge_connectivity(&Multigraph::new(1)), Lambda::Infinite);
        let c5 = Multigraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(edge_connectivity(&c5), Lambda::Finite(2));
        let bridge =
            Multigraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let (v, side) = global_min_cut(&bridge).unwrap();
        assert_eq!((v, side), (1, vec![0, 1, 2]));
    }

    #[test]
    fn arc_strong_examples() {
        let tri = MultiDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(is_k_arc_strong(&tri, 1));
        let cut = k_arc_strong_violation(&tri, 2).unwrap();
        assert!(cut.out_size < 2);
        assert_eq!(cut.side.len(), 1);
        for k in 1..=3 {
            let t = rotative_tournament(2 * k + 1).unwrap();
            assert!(is_k_arc_strong(&t, k));
            assert!(!is_k_arc_strong(&t, k + 1));
            assert_eq!(arc_strength(&t), Lambda::Finite(k));
        }
    }

    #[test]
    fn core_acceleration_agrees() {
        let t = rotative_tournament(5).unwrap();
        let mut d = t.clone();
        let x = d.add_vertices(1);
        d.add_arc(x, 0).unwrap();
        d.add_arc(1, x).unwrap();
        assert_eq!(is_k_arc_strong_with_core(&d, 1, &[0, 1, 2, 3, 4]).unwrap(), true);
        assert_eq!(is_k_arc_strong_with_core(&d, 2, &[0, 1, 2, 3, 4]).unwrap(), false);
        assert!(is_k_arc_strong(&d, 1) && !is_k_arc_strong(&d, 2));
    }
}
