//! Packing problems in disguise: P3-packing in bipartite graphs becomes
//! 3-inversion, and s-uniform hypergraph matching becomes inversion of sets
//! of at most s+1 vertices. In both gadgets every source vertex has a
//! deficit that a set containing it must repair, so larger packings mean
//! fewer inversions.

use itertools::Itertools;

use super::{place, tournament_of_order, Layout, ReductionInstance, ReductionKind};
use crate::error::{invalid, precondition, Result};
use crate::graph::{MultiDigraph, Multigraph};
use crate::inversion::InversionFamily;
use crate::oracles::{max_hypergraph_matching, max_p3_packing, Hypergraph, SizeMode};

/// Splits `rest` into groups of `size`, topping up the last one with the
/// smallest other vertices.
fn cover_groups(rest: &[usize], size: usize, n: usize) -> Vec<Vec<usize>> {
    rest.chunks(size)
        .map(|c| {
            let mut g = c.to_vec();
            for v in 0..n {
                if g.len() == size {
                    break;
                }
                if !g.contains(&v) {
                    g.push(v);
                }
            }
            g.sort_unstable();
            g
        })
        .collect()
}

fn uncovered(n: usize, packed: &[Vec<usize>]) -> Vec<usize> {
    let mut hit = vec![false; n];
    for &v in packed.iter().flatten() {
        hit[v] = true;
    }
    (0..n).filter(|&v| !hit[v]).collect()
}

/// The P3-packing gadget for a simple bipartite graph with a maximum
/// packing planted. The predicted optimum is ⌈(n − y)/2⌉ for a maximum
/// packing of `y` paths.
pub fn gen_p3p(g: &Multigraph, k: usize) -> Result<ReductionInstance> {
    let (_, paths) = max_p3_packing(g);
    gen_p3p_with_packing(g, k, &paths)
}

/// As [`gen_p3p`], planting the given packing (which need not be maximum).
pub fn gen_p3p_with_packing(g: &Multigraph, k: usize, paths: &[[usize; 3]]) -> Result<ReductionInstance> {
    let n = g.n();
    if k < 1 {
        return invalid("need k ≥ 1");
    }
    if n < 2 {
        return precondition("the P3-packing gadget needs at least two vertices");
    }
    if g.edges().any(|(_, _, m)| m > 1) {
        return invalid("source graph must be simple");
    }
    let side = g.bipartition().ok_or_else(|| crate::Error::InvalidArgument("source graph is not bipartite".into()))?;
    validate_paths(g, paths)?;

    let mut lay = Layout::new();
    let vs = lay.many(n, |v| format!("v{v}"));
    let mut w = Vec::new();
    let mut z = Vec::new();
    for v in 0..n {
        w.push(lay.many(k, |i| format!("w{v}^{}", i + 1)));
        z.push(lay.many(k - 1, |i| format!("z{v}^{}", i + 1)));
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let wq: Vec<usize> = pairs.iter().map(|&(a, b)| lay.one(format!("w{{{a},{b}}}"))).collect();

    let mut d = MultiDigraph::new(lay.next);
    let core: Vec<usize> = (n..lay.next).collect();
    place(&mut d, &tournament_of_order(core.len(), k)?, &core);
    for v in 0..n {
        let a_side = side[v] == 0;
        for &x in &w[v] {
            if a_side { d.add_arc(vs[v], x)? } else { d.add_arc(x, vs[v])? }
        }
        for &x in &z[v] {
            if a_side { d.add_arc(x, vs[v])? } else { d.add_arc(vs[v], x)? }
        }
    }
    for (&(a, b), &q) in pairs.iter().zip(&wq) {
        for v in [a, b] {
            if side[v] == 0 { d.add_arc(vs[v], q)? } else { d.add_arc(q, vs[v])? }
        }
    }
    for (u, v, _) in g.edges() {
        let (a, b) = if side[u] == 0 { (u, v) } else { (v, u) };
        d.add_arc(vs[a], vs[b])?;
    }

    let packed: Vec<Vec<usize>> = paths.iter().map(|p| p.to_vec()).collect();
    let mut planted = InversionFamily::new(packed.clone())?;
    for q in cover_groups(&uncovered(n, &packed), 2, n) {
        let id = wq[pairs.iter().position(|&pr| pr == (q[0], q[1])).expect("pair exists")];
        planted.push(vec![q[0], q[1], id])?;
    }
    let (y, _) = max_p3_packing(g);
    Ok(ReductionInstance {
        digraph: d,
        kind: ReductionKind::P3p,
        k,
        p: 3,
        mode: SizeMode::AtMost,
        ell: None,
        predicted: Some((n - y).div_ceil(2)),
        labels: lay.labels,
        planted: Some(planted),
    })
}

fn validate_paths(g: &Multigraph, paths: &[[usize; 3]]) -> Result<()> {
    let mut seen = vec![false; g.n()];
    for &[a, c, b] in paths {
        if [a, b, c].iter().any(|&v| v >= g.n() || std::mem::replace(&mut seen[v], true)) {
            return invalid("packing paths must be vertex-disjoint and in range");
        }
        if g.multiplicity(a, c) == 0 || g.multiplicity(c, b) == 0 {
            return invalid(format!("{a}-{c}-{b} is not a path of the source graph"));
        }
    }
    Ok(())
}

/// The hypergraph-matching gadget for an `s`-uniform hypergraph, s ≥ 3, with
/// a maximum matching planted. The predicted optimum for sets of at most
/// s+1 vertices is ⌈(n − x)/(s−1)⌉ for a maximum matching of `x` edges.
pub fn gen_hm(h: &Hypergraph, s: usize, k: usize) -> Result<ReductionInstance> {
    let (_, matching) = max_hypergraph_matching(h)?;
    gen_hm_with_matching(h, s, k, &matching)
}

pub fn gen_hm_with_matching(h: &Hypergraph, s: usize, k: usize, matching: &[usize]) -> Result<ReductionInstance> {
    let n = h.n;
    if k < 1 || s < 3 {
        return invalid(format!("need k ≥ 1 and s ≥ 3, got k={k}, s={s}"));
    }
    if h.edges.iter().any(|e| e.len() != s) {
        return invalid(format!("hypergraph is not {s}-uniform"));
    }
    if n < s {
        return precondition(format!("the matching gadget needs at least s={s} vertices"));
    }
    let mut hit = vec![false; n];
    for &i in matching {
        let e = h.edges.get(i).ok_or_else(|| crate::Error::InvalidArgument(format!("no hyperedge {i}")))?;
        if e.iter().any(|&v| std::mem::replace(&mut hit[v], true)) {
            return invalid("matching edges must be disjoint");
        }
    }

    let mut lay = Layout::new();
    let vs = lay.many(n, |v| format!("v{v}"));
    let we = lay.many(h.edges.len(), |i| format!("w_e{i}"));
    let subsets: Vec<Vec<usize>> = (0..n).combinations(s - 1).collect();
    let wq: Vec<usize> = subsets.iter().map(|q| lay.one(format!("w{q:?}"))).collect();
    let w3: Vec<Vec<usize>> = (0..n).map(|v| lay.many(k, |i| format!("in{v}^{}", i + 1))).collect();
    let w4: Vec<Vec<usize>> = (0..n).map(|v| lay.many(k - 1, |i| format!("out{v}^{}", i + 1))).collect();

    let mut d = MultiDigraph::new(lay.next);
    let core: Vec<usize> = (n..lay.next).collect();
    place(&mut d, &tournament_of_order(core.len(), k)?, &core);
    for (e, &x) in h.edges.iter().zip(&we) {
        for &v in e {
            d.add_arc(x, vs[v])?;
        }
    }
    for (q, &x) in subsets.iter().zip(&wq) {
        for &v in q {
            d.add_arc(x, vs[v])?;
        }
    }
    for v in 0..n {
        for &x in &w3[v] {
            d.add_arc(x, vs[v])?;
        }
        for &x in &w4[v] {
            d.add_arc(vs[v], x)?;
        }
    }

    let mut planted = InversionFamily::empty();
    let mut packed = Vec::new();
    for &i in matching {
        let mut set = h.edges[i].clone();
        packed.push(set.clone());
        set.push(we[i]);
        planted.push(set)?;
    }
    for q in cover_groups(&uncovered(n, &packed), s - 1, n) {
        let id = wq[subsets.binary_search(&q).expect("subset exists")];
        planted.push([q, vec![id]].concat())?;
    }
    let (x, _) = max_hypergraph_matching(h)?;
    Ok(ReductionInstance {
        digraph: d,
        kind: ReductionKind::Hm,
        k,
        p: s + 1,
        mode: SizeMode::AtMost,
        ell: None,
        predicted: Some((n - x).div_ceil(s - 1)),
        labels: lay.labels,
        planted: Some(planted),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3p_path_and_star() {
        let p4 = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        for k in 1..=2 {
            let inst = gen_p3p(&p4, k).unwrap();
            assert_eq!(inst.digraph.n(), 4 + 4 * (2 * k - 1) + 6);
            assert_eq!(inst.predicted, Some(2));
            assert!(inst.verify_planted().unwrap());
            assert_eq!(inst.planted.as_ref().unwrap().len(), 2);
        }
        let empty = Multigraph::new(3);
        let inst = gen_p3p(&empty, 1).unwrap();
        assert_eq!(inst.predicted, Some(2));
        assert!(inst.verify_planted().unwrap());
    }

    #[test]
    fn p3p_rejects_odd_cycles() {
        let c3 = Multigraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(gen_p3p(&c3, 1).is_err());
        assert!(gen_p3p(&Multigraph::new(1), 1).is_err());
    }

    #[test]
    fn hm_small() {
        let h = Hypergraph::new(5, [vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let inst = gen_hm(&h, 3, 1).unwrap();
        assert_eq!(inst.predicted, Some(2));
        assert!(inst.verify_planted().unwrap());
        let none = Hypergraph::new(4, Vec::<Vec<usize>>::new()).unwrap();
        let inst = gen_hm(&none, 3, 2).unwrap();
        assert_eq!(inst.predicted, Some(2));
        assert!(inst.verify_planted().unwrap());
    }

    #[test]
    fn meta_round_trips() {
        let p3 = Multigraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let inst = gen_p3p(&p3, 1).unwrap();
        let m = super::super::parse_meta(&inst.meta()).unwrap();
        assert_eq!((m.kind, m.k, m.p, m.predicted), (inst.kind, 1, 3, Some(1)));
        assert_eq!(m.labels, inst.labels);
        assert_eq!(m.planted, inst.planted);
    }
}
