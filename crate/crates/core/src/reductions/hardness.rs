//! Two single-step encodings. Orienting a graph with some edges doubled
//! (the doubled edges must be oriented both ways as a block) becomes
//! 2-inversion towards 2-arc-strength, and pushing becomes inversion of
//! (n−1)-sets, since the sets V∖x realise a push by x.

use super::{Layout, ReductionInstance, ReductionKind};
use crate::error::{invalid, Result};
use crate::graph::{MultiDigraph, Multigraph};
use crate::inversion::push_family;
use crate::oracles::{gf2_reachable, strong_pushing_bruteforce, SizeMode, PUSH_LIMIT};

/// Largest source order for which a planted family is searched.
pub const DO_PLANT_LIMIT: usize = 10;

/// Each edge of `g` becomes arcs from its lower to its higher endpoint: one
/// arc for edges in `single`, two parallel arcs for the rest. Inverting a
/// pair flips a whole bundle, so a 2-arc-strong result orients the doubled
/// edges as digon-free double arcs.
pub fn gen_do_m22inv(g: &Multigraph, single: &[(usize, usize)]) -> Result<ReductionInstance> {
    if g.edges().any(|(_, _, m)| m > 1) {
        return invalid("source graph must be simple");
    }
    let norm = |&(u, v): &(usize, usize)| (u.min(v), u.max(v));
    let single: Vec<(usize, usize)> = single.iter().map(norm).collect();
    if let Some(&(u, v)) = single.iter().find(|&&(u, v)| u == v || g.multiplicity(u, v) == 0) {
        return invalid(format!("{{{u},{v}}} is not an edge of the source graph"));
    }
    let mut lay = Layout::new();
    lay.many(g.n(), |v| format!("v{v}"));
    let mut d = MultiDigraph::new(g.n());
    for (u, v, _) in g.edges() {
        let m = if single.contains(&(u, v)) { 1 } else { 2 };
        d.add_arcs(u, v, m)?;
    }
    let planted = if g.n() <= DO_PLANT_LIMIT { gf2_reachable(&d, 2, 2, SizeMode::Exact)? } else { None };
    Ok(ReductionInstance {
        digraph: d,
        kind: ReductionKind::DoM22inv,
        k: 2,
        p: 2,
        mode: SizeMode::Exact,
        ell: None,
        predicted: None,
        labels: lay.labels,
        planted,
    })
}

/// The digraph itself, with the family {V∖x : x ∈ X} planted for a smallest
/// strong pushing set X. For odd |X| the family yields the reverse of the
/// pushed digraph, which is strong exactly when the push is. The plant is
/// searched only up to the brute-force pushing limit, and is absent when
/// the sets would have fewer than two vertices.
pub fn gen_push_n1(d: &MultiDigraph) -> Result<ReductionInstance> {
    let n = d.n();
    if !d.is_oriented() {
        return invalid("push-n1 needs an oriented graph");
    }
    let planted = match n <= PUSH_LIMIT {
        true => strong_pushing_bruteforce(d)?.and_then(|x| push_family(n, &x).ok()),
        false => None,
    };
    let mut lay = Layout::new();
    lay.many(n, |v| format!("v{v}"));
    Ok(ReductionInstance {
        digraph: d.clone(),
        kind: ReductionKind::PushN1,
        k: 1,
        p: n.saturating_sub(1),
        mode: SizeMode::Exact,
        ell: None,
        predicted: None,
        labels: lay.labels,
        planted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubled_cycle_with_chord() {
        // K4 with every edge doubled: a Hamiltonian cycle orientation pattern
        // of the double arcs gives 2-arc-strength.
        let k4 = Multigraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let inst = gen_do_m22inv(&k4, &[]).unwrap();
        assert_eq!(inst.digraph.arc_count(), 12);
        assert!(inst.verify_planted().unwrap());
        assert!(gen_do_m22inv(&k4, &[(0, 0)]).is_err());
    }

    #[test]
    fn path_has_no_plant() {
        let p3 = Multigraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let inst = gen_do_m22inv(&p3, &[(1, 0)]).unwrap();
        assert!(inst.planted.is_none());
    }

    #[test]
    fn push_plant_on_transitive_triangle() {
        let t = MultiDigraph::from_arcs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = gen_push_n1(&t).unwrap();
        assert_eq!(inst.p, 2);
        assert!(inst.verify_planted().unwrap());
    }
}
