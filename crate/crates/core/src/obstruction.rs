//! k-obstructions: the digraphs that no family of odd-size inversions can
//! make k-arc-strong.
//!
//! A certificate is a partition `(X₁,…,X_r, Y)` of the vertices such that
//! (i) every `X_i` has exactly `2k` incident edges in the underlying
//! multigraph, (ii) every vertex of `X = ∪X_i` is joined to every vertex of
//! `Y` by exactly one edge, and (iii) `d⁺(X) − |X||Y|/2` is an odd integer.
//! An inversion of odd size reverses an even number of `X`–`Y` edges, so
//! certificates survive odd-size inversions, and (iii) rules out
//! k-arc-strength.

use std::fmt;

use crate::error::{invalid, precondition, unsupported, Error, Result};
use crate::flow::{is_2k_edge_connected, is_k_edge_connected, FlowNet};
use crate::format::{content_lines, parse_ids};
use crate::graph::{mask, members, MultiDigraph, Multigraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObstructionCertificate {
    pub k: usize,
    pub parts: Vec<Vec<usize>>,
    pub y_side: Vec<usize>,
}

impl ObstructionCertificate {
    pub fn x_union(&self) -> Vec<usize> {
        let mut x: Vec<usize> = self.parts.iter().flatten().copied().collect();
        x.sort_unstable();
        x
    }

    /// d⁺_D(X).
    pub fn out_across(&self, d: &MultiDigraph) -> usize {
        d.out_cut(&mask(d.n(), &self.x_union()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let err = |line, message: &str| Error::Parse { line, message: message.into() };
        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `obstruction k=<k>` header"))?;
        let k = header
            .strip_prefix("obstruction k=")
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| err(hline, "expected `obstruction k=<k>`"))?;
        let mut y_side = None;
        let mut parts = Vec::new();
        for (line, content) in lines {
            let (label, ids) = content.split_once(':').ok_or_else(|| err(line, "expected `<label>: <ids>`"))?;
            let ids = parse_ids(line, ids)?;
            if label == "Y" {
                if y_side.replace(ids).is_some() {
                    return Err(err(line, "duplicate Y line"));
                }
            } else if label.strip_prefix('X').and_then(|i| i.parse::<usize>().ok()) == Some(parts.len() + 1) {
                parts.push(ids);
            } else {
                return Err(err(line, "expected `Y:` or the next `X<i>:` line"));
            }
        }
        let y_side = y_side.ok_or_else(|| err(hline, "missing Y line"))?;
        Ok(ObstructionCertificate { k, parts, y_side })
    }
}

impl fmt::Display for ObstructionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "obstruction k={}", self.k)?;
        writeln!(f, "Y: {}", ids(&self.y_side))?;
        for (i, p) in self.parts.iter().enumerate() {
            writeln!(f, "X{}: {}", i + 1, ids(p))?;
        }
        Ok(())
    }
}

/// Conditions (ii) and (iii) for `X = V∖Y`.
fn complete_and_odd(d: &MultiDigraph, y_mask: &[bool]) -> bool {
    let n = d.n();
    let x: Vec<usize> = (0..n).filter(|&v| !y_mask[v]).collect();
    let y: Vec<usize> = (0..n).filter(|&v| y_mask[v]).collect();
    let joined_once = x.iter().all(|&a| y.iter().all(|&b| d.multiplicity(a, b) + d.multiplicity(b, a) == 1));
    let product = x.len() * y.len();
    if !joined_once || product % 2 == 1 {
        return false;
    }
    let x_mask: Vec<bool> = y_mask.iter().map(|b| !b).collect();
    let excess = d.out_cut(&x_mask) as i64 - (product / 2) as i64;
    excess.rem_euclid(2) == 1
}

pub fn verify_certificate(d: &MultiDigraph, c: &ObstructionCertificate) -> bool {
    let n = d.n();
    if c.y_side.is_empty() || c.parts.is_empty() || c.parts.iter().any(Vec::is_empty) {
        return false;
    }
    let mut owner = vec![0usize; n];
    for (i, set) in std::iter::once(&c.y_side).chain(&c.parts).enumerate() {
        for &v in set {
            if v >= n || owner[v] != 0 {
                return false;
            }
            owner[v] = i + 1;
        }
    }
    if owner.contains(&0) {
        return false;
    }
    let g = d.underlying();
    c.parts.iter().all(|p| g.cut_of(p) == 2 * c.k) && complete_and_odd(d, &mask(n, &c.y_side))
}

/// Partition of `X` into sets with exactly `k` incident edges each.
///
/// For every `x ∈ X` the complement of `X` is contracted to one vertex `y`;
/// a partition can only exist if `λ(x,y) = k`, and the source side `S_x` of
/// a minimum cut is then a k-set containing `x`. Intersecting k-sets inside
/// a proper subset of a k-edge-connected graph have k-set unions, so merging
/// until disjoint yields the partition.
pub fn k_regular_partition(g: &Multigraph, k: usize, x: &[usize]) -> Result<Option<Vec<Vec<usize>>>> {
    let n = g.n();
    if x.iter().any(|&v| v >= n) {
        return invalid("vertex out of range");
    }
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if x.is_empty() {
        return Ok(Some(Vec::new()));
    }
    if x.len() == n {
        return invalid("X must leave at least one vertex outside");
    }
    if !is_k_edge_connected(g, k) {
        return precondition(format!("graph is not {k}-edge-connected"));
    }
    let mut index = vec![x.len(); n];
    for (i, &v) in x.iter().enumerate() {
        index[v] = i;
    }
    let y = x.len();
    let edges = g.edges().map(|(u, v, m)| (index[u], index[v], m)).filter(|&(a, b, _)| a != b);
    let mut net = FlowNet::undirected(x.len() + 1, edges);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for i in 0..x.len() {
        if net.max_flow(i, y, k + 1) > k {
            return Ok(None);
        }
        let side = net.residual_side(i);
        sets.push(members(&side[..y]).into_iter().map(|j| x[j]).collect());
    }
    sets.sort();
    sets.dedup();
    'merge: loop {
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let a = mask(n, &sets[i]);
                if sets[j].iter().any(|&v| a[v]) {
                    let both: Vec<usize> = sets[j].iter().copied().filter(|&v| a[v]).collect();
                    let mut union = sets[i].clone();
                    union.extend(sets[j].iter().copied().filter(|&v| !a[v]));
                    union.sort_unstable();
                    assert_eq!(g.cut_of(&both), k, "uncrossing: intersection must be a k-set");
                    assert_eq!(g.cut_of(&union), k, "uncrossing: union must be a k-set");
                    sets[i] = union;
                    sets.swap_remove(j);
                    continue 'merge;
                }
            }
        }
        break;
    }
    sets.sort();
    Ok(Some(sets))
}

/// Tries to complete `Y` to a k-certificate.
pub fn extend_to_certificate(d: &MultiDigraph, k: usize, y: &[usize]) -> Result<Option<ObstructionCertificate>> {
    let n = d.n();
    if !d.is_digraph() {
        return precondition("certificates are defined for digraphs");
    }
    if n < 4 * k + 2 {
        return precondition(format!("need n ≥ 4k+2 = {}, got {n}", 4 * k + 2));
    }
    if !is_2k_edge_connected(d, k) {
        return precondition(format!("digraph is not {}-edge-connected", 2 * k));
    }
    if y.iter().any(|&v| v >= n) {
        return invalid("vertex out of range");
    }
    let y_mask = mask(n, y);
    let y_side = members(&y_mask);
    if y_side.is_empty() || y_side.len() == n || !complete_and_odd(d, &y_mask) {
        return Ok(None);
    }
    let x: Vec<usize> = (0..n).filter(|&v| !y_mask[v]).collect();
    let g = d.underlying();
    Ok(k_regular_partition(&g, 2 * k, &x)?.map(|parts| {
        let c = ObstructionCertificate { k, parts, y_side };
        debug_assert!(verify_certificate(d, &c));
        c
    }))
}

/// Polynomial recognition for `n ≥ 4k+2`: the `Y` side of any certificate is
/// then either a single vertex or the set of vertices of degree above `2k`.
pub fn is_k_obstruction(d: &MultiDigraph, k: usize) -> Result<Option<ObstructionCertificate>> {
    let n = d.n();
    if !d.is_digraph() {
        return invalid("obstructions are defined for digraphs");
    }
    if n < 4 * k + 2 {
        return precondition(format!("recognition needs n ≥ 4k+2 = {}, got {n}", 4 * k + 2));
    }
    if !is_2k_edge_connected(d, k) {
        return Ok(None);
    }
    let g = d.underlying();
    let high: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 2 * k).collect();
    let mut candidates: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    if high.len() >= 2 {
        candidates.push(high);
    }
    for y in candidates {
        if let Some(c) = extend_to_certificate(d, k, &y)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Largest order accepted by [`find_certificate_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Exhaustive certificate search over every `Y` and every partition of the
/// rest; valid at any order, exponential, limited to small `n`.
pub fn find_certificate_exhaustive(d: &MultiDigraph, k: usize) -> Result<Option<ObstructionCertificate>> {
    let n = d.n();
    if n > EXHAUSTIVE_LIMIT {
        return unsupported(format!("exhaustive certificate search is limited to n ≤ {EXHAUSTIVE_LIMIT}"));
    }
    if n < 2 {
        return Ok(None);
    }
    let g = d.underlying();
    let full = (1usize << n) - 1;
    let bits_of = |s: usize| (0..n).filter(|&v| s >> v & 1 == 1).collect::<Vec<_>>();
    let good: Vec<bool> = (0..=full).map(|s| s != 0 && s != full && g.cut_of(&bits_of(s)) == 2 * k).collect();
    for ymask in 1..full {
        let y_mask: Vec<bool> = (0..n).map(|v| ymask >> v & 1 == 1).collect();
        if !complete_and_odd(d, &y_mask) {
            continue;
        }
        let mut parts = Vec::new();
        if exact_cover(full & !ymask, &good, &mut parts) {
            let c = ObstructionCertificate {
                k,
                parts: parts.into_iter().map(bits_of).collect(),
                y_side: bits_of(ymask),
            };
            debug_assert!(verify_certificate(d, &c));
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn exact_cover(rest: usize, good: &[bool], parts: &mut Vec<usize>) -> bool {
    if rest == 0 {
        return true;
    }
    let low = rest & rest.wrapping_neg();
    let others = rest & !low;
    // Enumerate subsets of `others`, each joined with the lowest vertex.
    let mut sub = others;
    loop {
        let block = sub | low;
        if good[block] {
            parts.push(block);
            if exact_cover(rest & !block, good, parts) {
                return true;
            }
            parts.pop();
        }
        if sub == 0 {
            return false;
        }
        sub = (sub - 1) & others;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::star_matching_obstruction;
    use crate::graph::rotative_tournament;

    fn star7() -> MultiDigraph {
        star_matching_obstruction(3)
    }

    fn star7_cert() -> ObstructionCertificate {
        ObstructionCertificate { k: 1, parts: vec![vec![1, 2], vec![3, 4], vec![5, 6]], y_side: vec![0] }
    }

    // Every leaf of the star has degree 2, so the finest partition is found.
    fn star7_singletons() -> ObstructionCertificate {
        ObstructionCertificate { k: 1, parts: (1..7).map(|v| vec![v]).collect(), y_side: vec![0] }
    }

    #[test]
    fn star_certificate_verifies() {
        assert!(verify_certificate(&star7(), &star7_cert()));
        let mut d = star7();
        d.remove_arc(0, 1);
        d.add_arc(1, 0).unwrap();
        assert!(!verify_certificate(&d, &star7_cert()));
    }

    #[test]
    fn triangle_has_no_certificate() {
        let d = MultiDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        for k in 1..=2 {
            assert_eq!(find_certificate_exhaustive(&d, k).unwrap(), None);
        }
    }

    #[test]
    fn regular_partition_examples() {
        let c4 = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(k_regular_partition(&c4, 2, &[0]).unwrap(), Some(vec![vec![0]]));
        let g = star7().underlying();
        assert_eq!(
            k_regular_partition(&g, 2, &[1, 2, 3, 4, 5, 6]).unwrap(),
            Some((1..7).map(|v| vec![v]).collect())
        );
        let k4 = Multigraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k_regular_partition(&k4, 3, &[0, 1]).unwrap(), Some(vec![vec![0], vec![1]]));
        assert!(matches!(k_regular_partition(&c4, 3, &[0]), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extend_to_certificate(&star7(), 1, &[0]).unwrap(), Some(star7_singletons()));
        assert_eq!(extend_to_certificate(&star7(), 1, &[1]).unwrap(), None);
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(is_k_obstruction(&star7(), 1).unwrap(), Some(star7_singletons()));
        assert_eq!(is_k_obstruction(&rotative_tournament(7).unwrap(), 1).unwrap(), None);
        let c4 = MultiDigraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(is_k_obstruction(&c4, 1), Err(Error::PreconditionViolated(_))));
        assert_eq!(find_certificate_exhaustive(&star7(), 1).unwrap().map(|c| verify_certificate(&star7(), &c)), Some(true));
    }

    #[test]
    fn certificate_text_round_trip() {
        let c = star7_cert();
        assert_eq!(ObstructionCertificate::parse(&c.to_string()).unwrap(), c);
        assert!(ObstructionCertificate::parse("obstruction k=1\nX2: 1\n").is_err());
    }
}
