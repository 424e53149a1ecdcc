use crate::error::{invalid, Result};
use crate::graph::Multigraph;

/// A hypergraph on `0..n` with sorted, duplicate-free hyperedges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut out = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.iter().any(|&v| v >= n) {
                return invalid(format!("hyperedge {e:?} out of range for n={n}"));
            }
            out.push(e);
        }
        Ok(Hypergraph { n, edges: out })
    }

    /// The common hyperedge size; edgeless hypergraphs have none.
    pub fn uniformity(&self) -> Result<Option<usize>> {
        let Some(first) = self.edges.first() else {
            return Ok(None);
        };
        if self.edges.iter().any(|e| e.len() != first.len()) {
            return invalid("hypergraph is not uniform");
        }
        Ok(Some(first.len()))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }
}

/// Maximum number of vertex-disjoint 3-vertex paths, with the paths as
/// `[end, centre, end]`.
pub fn max_p3_packing(g: &Multigraph) -> (usize, Vec<[usize; 3]>) {
    let n = g.n();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).map(|(u, _)| u).collect()).collect();
    // Every path through v, with v as an end or the centre.
    let paths_at = |v: usize| -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &c in &nbrs[v] {
            for &w in &nbrs[c] {
                if w != v && (w > v || !nbrs[v].contains(&w)) {
                    out.push([v.min(w), c, v.max(w)]);
                }
            }
        }
        for (i, &a) in nbrs[v].iter().enumerate() {
            for &b in &nbrs[v][i + 1..] {
                out.push([a, v, b]);
            }
        }
        out.sort();
        out.dedup();
        out
    };
    let all: Vec<Vec<[usize; 3]>> = (0..n).map(paths_at).collect();
    let mut best = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    p3_branch(0, &all, &mut used, n, &mut cur, &mut best);
    (best.len(), best)
}

fn p3_branch(
    v: usize,
    all: &[Vec<[usize; 3]>],
    used: &mut Vec<bool>,
    free: usize,
    cur: &mut Vec<[usize; 3]>,
    best: &mut Vec<[usize; 3]>,
) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if v >= all.len() || cur.len() + free / 3 <= best.len() {
        return;
    }
    if used[v] {
        return p3_branch(v + 1, all, used, free, cur, best);
    }
    // Paths through v only use vertices ≥ v that are still free.
    for path in &all[v] {
        if path.iter().all(|&x| !used[x] && x >= v) {
            path.iter().for_each(|&x| used[x] = true);
            cur.push(*path);
            p3_branch(v + 1, all, used, free - 3, cur, best);
            cur.pop();
            path.iter().for_each(|&x| used[x] = false);
        }
    }
    used[v] = true;
    p3_branch(v + 1, all, used, free - 1, cur, best);
    used[v] = false;
}

/// Maximum number of pairwise disjoint hyperedges, returned as indices.
pub fn max_hypergraph_matching(h: &Hypergraph) -> Result<(usize, Vec<usize>)> {
    let Some(s) = h.uniformity()? else {
        return Ok((0, Vec::new()));
    };
    if s < 2 {
        return invalid("uniformity must be at least 2");
    }
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); h.n];
    for (i, e) in h.edges.iter().enumerate() {
        at[e[0]].push(i);
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; h.n];
    matching_branch(0, h, s, &at, &mut used, h.n, &mut cur, &mut best);
    Ok((best.len(), best))
}

#[allow(clippy::too_many_arguments)]
fn matching_branch(
    v: usize,
    h: &Hypergraph,
    s: usize,
    at: &[Vec<usize>],
    used: &mut Vec<bool>,
    free: usize,
    cur: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if v >= h.n || cur.len() + free / s <= best.len() {
        return;
    }
    if used[v] {
        return matching_branch(v + 1, h, s, at, used, free, cur, best);
    }
    // Edges are indexed by their smallest vertex.
    for &i in &at[v] {
        let e = &h.edges[i];
        if e.iter().all(|&x| !used[x]) {
            e.iter().for_each(|&x| used[x] = true);
            cur.push(i);
            matching_branch(v + 1, h, s, at, used, free - s, cur, best);
            cur.pop();
            e.iter().for_each(|&x| used[x] = false);
        }
    }
    used[v] = true;
    matching_branch(v + 1, h, s, at, used, free - 1, cur, best);
    used[v] = false;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_examples() {
        let path = Multigraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(max_p3_packing(&path), (1, vec![[0, 1, 2]]));
        assert_eq!(max_p3_packing(&Multigraph::new(5)).0, 0);
        let c6 = Multigraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(max_p3_packing(&c6).0, 2);
    }

    #[test]
    fn matching_examples() {
        let one = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        assert_eq!(max_hypergraph_matching(&one).unwrap().0, 1);
        let meet = Hypergraph::new(5, [vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!(max_hypergraph_matching(&meet).unwrap().0, 1);
        let apart = Hypergraph::new(6, [vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(max_hypergraph_matching(&apart).unwrap(), (2, vec![0, 1]));
        let mixed = Hypergraph::new(4, [vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(matches!(max_hypergraph_matching(&mixed), Err(crate::Error::InvalidArgument(_))));
    }
}
