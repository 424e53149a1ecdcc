//! Partitioned subgraph isomorphism: given a graph G whose vertices are split
//! into parts V_1..V_r and a pattern H on the parts, pick one vertex u_i per
//! part such that u_i u_j ∈ E(G) whenever ij ∈ E(H).
//!
//! Two gadgets encode it. In the first, a single inversion of
//! p = 2r + |E(H)| vertices must hit one vertex per part and one edge vertex
//! per pattern edge. In the second, at most ℓ = 11|E(H)| + |V(H)| inversions
//! of pairs towards 2-arc-strength must trace one chain per part.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{add_bundle, place, tournament_of_order, Layout, ReductionInstance, ReductionKind};
use crate::error::{invalid, Error, Result};
use crate::graph::{MultiDigraph, Multigraph};
use crate::inversion::InversionFamily;
use crate::oracles::SizeMode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiInstance {
    pub g: Multigraph,
    pub parts: Vec<Vec<usize>>,
    /// Pattern on the part indices `0..parts.len()`.
    pub h: Multigraph,
    part_of: Vec<usize>,
}

impl PsiInstance {
    pub fn new(g: Multigraph, parts: Vec<Vec<usize>>, h: Multigraph) -> Result<Self> {
        if h.n() != parts.len() {
            return invalid(format!("pattern has {} vertices but there are {} parts", h.n(), parts.len()));
        }
        if g.edges().chain(h.edges()).any(|(_, _, m)| m > 1) {
            return invalid("source graph and pattern must be simple");
        }
        let mut part_of = vec![usize::MAX; g.n()];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= g.n() || part_of[v] != usize::MAX {
                    return invalid(format!("vertex {v} is out of range or in two parts"));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&i| i == usize::MAX) {
            return invalid(format!("vertex {v} is in no part"));
        }
        let parts = parts.into_iter().map(|p| p.into_iter().sorted().collect()).collect();
        Ok(PsiInstance { g, parts, h, part_of })
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Checks the normal form both gadgets rely on, naming the first
    /// violated condition.
    pub fn validate_normalised(&self) -> Result<()> {
        let fail = |what: String| Err(Error::PreconditionViolated(format!("instance not normalised: {what}")));
        let r = self.parts.len();
        if r < 2 {
            return fail(format!("needs at least two parts, has {r}"));
        }
        if let Some(i) = (0..r).find(|&i| self.h.degree(i) < 2) {
            return fail(format!("pattern vertex {i} has degree {} < 2", self.h.degree(i)));
        }
        if let Some(i) = (0..r).find(|&i| self.parts[i].len() < 3) {
            return fail(format!("part {i} has {} < 3 vertices", self.parts[i].len()));
        }
        for (i, j, _) in self.h.edges() {
            let between = self.edges_between(i, j).len();
            if between < 2 {
                return fail(format!("parts {i} and {j} are joined by {between} < 2 edges"));
            }
        }
        for (u, v, _) in self.g.edges() {
            let (a, b) = (self.part_of[u], self.part_of[v]);
            if a == b || self.h.multiplicity(a, b) == 0 {
                return fail(format!("edge {u}-{v} joins parts {a} and {b}, which the pattern does not link"));
            }
        }
        Ok(())
    }

    /// G-edges between parts `i < j` as (vertex of V_i, vertex of V_j).
    fn edges_between(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        self.g
            .edges()
            .filter_map(|(u, v, _)| match (self.part_of[u], self.part_of[v]) {
                (a, b) if (a, b) == (i, j) => Some((u, v)),
                (a, b) if (a, b) == (j, i) => Some((v, u)),
                _ => None,
            })
            .collect()
    }

    /// Pattern edges as `(i, j)` with `i < j`, in lexicographic order.
    fn pattern_edges(&self) -> Vec<(usize, usize)> {
        self.h.edges().map(|(i, j, _)| (i.min(j), i.max(j))).sorted().collect()
    }

    pub fn is_solution(&self, chosen: &[usize]) -> bool {
        chosen.len() == self.parts.len()
            && chosen.iter().enumerate().all(|(i, &u)| u < self.g.n() && self.part_of[u] == i)
            && self.h.edges().all(|(i, j, _)| self.g.multiplicity(chosen[i], chosen[j]) > 0)
    }

    fn check_solution(&self, chosen: Option<&[usize]>) -> Result<()> {
        match chosen {
            Some(c) if !self.is_solution(c) => invalid(format!("{c:?} is not a solution of the source instance")),
            _ => Ok(()),
        }
    }
}

/// The instance with pattern K3, parts {0,1,2}, {3,4,5}, {6,7,8} and two
/// edges between each pair of parts. Its only solution is (0, 3, 6).
pub fn triangle_psi_instance() -> (PsiInstance, Vec<usize>) {
    let g = Multigraph::from_edges(9, [(0, 3), (1, 4), (0, 6), (2, 7), (3, 6), (5, 8)]).expect("valid edges");
    let h = Multigraph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).expect("valid edges");
    let parts = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
    (PsiInstance::new(g, parts, h).expect("valid partition"), vec![0, 3, 6])
}

/// A normalised instance on `pattern` with parts of `part_size ≥ 3` vertices,
/// a planted solution, and each other cross edge of linked parts present
/// with probability `density` (at least one extra per linked pair).
pub fn random_psi_instance(
    rng: &mut impl Rng,
    pattern: &Multigraph,
    part_size: usize,
    density: f64,
) -> Result<(PsiInstance, Vec<usize>)> {
    if part_size < 3 {
        return invalid("parts need at least three vertices");
    }
    let r = pattern.n();
    let parts: Vec<Vec<usize>> = (0..r).map(|i| (i * part_size..(i + 1) * part_size).collect()).collect();
    let chosen: Vec<usize> = parts.iter().map(|p| *p.choose(rng).expect("nonempty part")).collect();
    let mut g = Multigraph::new(r * part_size);
    for (i, j, _) in pattern.edges() {
        g.add_edge(chosen[i], chosen[j])?;
        let others: Vec<(usize, usize)> = parts[i]
            .iter()
            .cartesian_product(&parts[j])
            .map(|(&u, &v)| (u, v))
            .filter(|&(u, v)| (u, v) != (chosen[i], chosen[j]))
            .collect();
        let forced = *others.choose(rng).expect("parts have several vertices");
        for (u, v) in others {
            if (u, v) == forced || rng.gen_bool(density.clamp(0.0, 1.0)) {
                g.add_edge(u, v)?;
            }
        }
    }
    let inst = PsiInstance::new(g, parts, pattern.clone())?;
    inst.validate_normalised()?;
    Ok((inst, chosen))
}

/// One inversion of `p = 2r + |E(H)|` vertices towards k-arc-strength, k ≥ 2.
pub fn gen_psi_ksi(inst: &PsiInstance, k: usize, solution: Option<&[usize]>) -> Result<ReductionInstance> {
    if k < 2 {
        return invalid("the single-inversion gadget needs k ≥ 2");
    }
    inst.validate_normalised()?;
    inst.check_solution(solution)?;
    let r = inst.parts.len();
    let hedges = inst.pattern_edges();
    let t = tournament_of_order(3 * k, k)?;

    let mut lay = Layout::new();
    lay.many(inst.g.n(), |v| format!("v{v}"));
    let hub = lay.many(3 * k, |a| format!("hub{a}"));
    let mut tp = Vec::new();
    let mut x = Vec::new();
    for i in 0..r {
        tp.push(lay.many(3 * k, |a| format!("part{i}.{a}")));
        x.push(lay.one(format!("x{i}")));
    }
    let te: Vec<Vec<usize>> = hedges.iter().map(|&(i, j)| lay.many(3 * k, |a| format!("edge{i},{j}.{a}"))).collect();
    let mut zs: Vec<Vec<((usize, usize), usize)>> = Vec::new();
    for &(i, j) in &hedges {
        let between = inst.edges_between(i, j);
        zs.push(between.into_iter().map(|(u, v)| ((u, v), lay.one(format!("z{u},{v}")))).collect());
    }

    let mut d = MultiDigraph::new(lay.next);
    for copy in std::iter::once(&hub).chain(&tp).chain(&te) {
        place(&mut d, &t, copy);
    }
    for i in 0..r {
        add_bundle(&mut d, &tp[i], &hub, k)?;
        add_bundle(&mut d, &hub, &tp[i], k)?;
        add_bundle(&mut d, &[x[i]], &tp[i], k)?;
        add_bundle(&mut d, &tp[i], &[x[i]], k - 1)?;
        for &v in &inst.parts[i] {
            add_bundle(&mut d, &[v], &tp[i], k)?;
            add_bundle(&mut d, &tp[i], &[v], k)?;
            d.add_arc(x[i], v)?;
        }
    }
    for (e, block) in te.iter().enumerate() {
        add_bundle(&mut d, block, &hub, k)?;
        add_bundle(&mut d, &hub, block, k - 2)?;
        for &((u, v), z) in &zs[e] {
            d.add_arc(z, u)?;
            d.add_arc(z, v)?;
            add_bundle(&mut d, &[z], block, k)?;
            add_bundle(&mut d, block, &[z], k)?;
        }
    }

    let planted = solution.map(|c| {
        let mut set: Vec<usize> = c.iter().copied().chain(x.iter().copied()).collect();
        for (e, &(i, j)) in hedges.iter().enumerate() {
            let z = zs[e].iter().find(|&&(uv, _)| uv == (c[i], c[j])).expect("solution edge").1;
            set.push(z);
        }
        InversionFamily::new([set]).expect("at least two vertices")
    });
    Ok(ReductionInstance {
        digraph: d,
        kind: ReductionKind::PsiKsi,
        k,
        p: 2 * r + hedges.len(),
        mode: SizeMode::Exact,
        ell: Some(1),
        predicted: None,
        labels: lay.labels,
        planted,
    })
}

/// At most `ℓ = 11|E(H)| + |V(H)|` inversions of pairs making the digraph
/// 2-arc-strong.
pub fn gen_npsi_22(inst: &PsiInstance, solution: Option<&[usize]>) -> Result<ReductionInstance> {
    inst.validate_normalised()?;
    inst.check_solution(solution)?;
    let r = inst.parts.len();
    let hedges = inst.pattern_edges();

    let mut lay = Layout::new();
    let s = lay.one("s".into());
    let nbrs: Vec<Vec<usize>> = (0..r).map(|c| inst.h.neighbors(c).map(|(c2, _)| c2).sorted().collect()).collect();
    let mut ab = Vec::new();
    // chain[v][i] = (x, y, z) for the i-th pattern neighbour of v's part.
    let mut chain: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); inst.g.n()];
    for c in 0..r {
        ab.push((lay.one(format!("a{c}")), lay.one(format!("b{c}"))));
        for &v in &inst.parts[c] {
            for &c2 in &nbrs[c] {
                let x = lay.one(format!("x{v},{c2}"));
                let y = lay.one(format!("y{v},{c2}"));
                let z = lay.one(format!("z{v},{c2}"));
                chain[v].push((x, y, z));
            }
        }
    }
    let u: Vec<usize> = hedges.iter().map(|&(i, j)| lay.one(format!("u{i},{j}"))).collect();
    let gedges: Vec<(usize, usize)> = inst.g.edges().map(|(a, b, _)| (a, b)).collect();
    let t: Vec<usize> = gedges.iter().map(|&(a, b)| lay.one(format!("t{a},{b}"))).collect();

    let mut d = MultiDigraph::new(lay.next);
    // Pairs of each colour gadget, grouped by the chain vertex they touch.
    let mut r_v: Vec<Vec<Vec<usize>>> = vec![Vec::new(); inst.g.n()];
    let mut arc = |d: &mut MultiDigraph, a: usize, b: usize, m: u32, owner: Option<usize>| -> Result<()> {
        d.add_arcs(a, b, m)?;
        if let Some(v) = owner {
            r_v[v].push(vec![a, b]);
        }
        Ok(())
    };
    for c in 0..r {
        let (a, b) = ab[c];
        arc(&mut d, s, a, 1, None)?;
        arc(&mut d, b, s, 1, None)?;
        for &v in &inst.parts[c] {
            let ch = &chain[v];
            arc(&mut d, a, ch[0].0, 2, Some(v))?;
            arc(&mut d, ch[ch.len() - 1].1, b, 2, Some(v))?;
            for w in ch.windows(2) {
                arc(&mut d, w[0].1, w[1].0, 2, Some(v))?;
            }
            for &(x, y, z) in ch {
                arc(&mut d, x, y, 1, Some(v))?;
                arc(&mut d, x, z, 1, Some(v))?;
                arc(&mut d, s, y, 1, Some(v))?;
                arc(&mut d, s, z, 1, None)?;
                arc(&mut d, z, s, 2, None)?;
            }
        }
    }
    let z_of = |v: usize, c2: usize| {
        let c = inst.part_of(v);
        chain[v][nbrs[c].binary_search(&c2).expect("pattern neighbour")].2
    };
    for &ue in &u {
        d.add_arc(s, ue)?;
    }
    let mut r_f = Vec::new();
    for (&(a, b), &tf) in gedges.iter().zip(&t) {
        let (ca, cb) = (inst.part_of(a), inst.part_of(b));
        let ue = u[hedges.binary_search(&(ca.min(cb), ca.max(cb))).expect("linked parts")];
        let (za, zb) = (z_of(a, cb), z_of(b, ca));
        d.add_arcs(tf, ue, 2)?;
        d.add_arc(za, tf)?;
        d.add_arc(zb, tf)?;
        r_f.push([vec![tf, ue], vec![tf, za], vec![tf, zb]]);
    }

    let planted = solution.map(|c| {
        let mut sets: Vec<Vec<usize>> = c.iter().flat_map(|&v| r_v[v].clone()).collect();
        for (f, &(a, b)) in gedges.iter().enumerate() {
            if c[inst.part_of(a)] == a && c[inst.part_of(b)] == b {
                sets.extend(r_f[f].iter().cloned());
            }
        }
        InversionFamily::new(sets).expect("pairs")
    });
    Ok(ReductionInstance {
        digraph: d,
        kind: ReductionKind::Npsi22,
        k: 2,
        p: 2,
        mode: SizeMode::Exact,
        ell: Some(11 * hedges.len() + r),
        predicted: None,
        labels: lay.labels,
        planted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::rng;

    #[test]
    fn triangle_psi() {
        let (inst, sol) = triangle_psi_instance();
        inst.validate_normalised().unwrap();
        assert!(inst.is_solution(&sol) && !inst.is_solution(&[1, 4, 7]));
        for k in 2..=3 {
            let red = gen_psi_ksi(&inst, k, Some(&sol)).unwrap();
            assert_eq!(red.p, 9);
            assert_eq!(red.digraph.n(), 9 + 3 * k * 7 + 3 + 6);
            assert!(red.verify_planted().unwrap(), "k={k}");
        }
        assert!(gen_psi_ksi(&inst, 1, Some(&sol)).is_err());
        assert!(gen_psi_ksi(&inst, 2, Some(&[1, 3, 6])).is_err());
    }

    #[test]
    fn triangle_npsi() {
        let (inst, sol) = triangle_psi_instance();
        let red = gen_npsi_22(&inst, Some(&sol)).unwrap();
        assert_eq!((red.digraph.n(), red.ell), (70, Some(36)));
        assert_eq!(red.planted.as_ref().unwrap().len(), 36);
        assert!(red.verify_planted().unwrap());
    }

    #[test]
    fn normalisation_names_condition() {
        let g = Multigraph::from_edges(6, [(0, 3), (1, 4)]).unwrap();
        let h = Multigraph::from_edges(2, [(0, 1)]).unwrap();
        let inst = PsiInstance::new(g, vec![vec![0, 1, 2], vec![3, 4, 5]], h).unwrap();
        let msg = inst.validate_normalised().unwrap_err().to_string();
        assert!(msg.contains("degree"), "{msg}");
        let (tri, _) = triangle_psi_instance();
        let mut g = tri.g.clone();
        g.add_edge(0, 1).unwrap();
        let bad = PsiInstance::new(g, tri.parts.clone(), tri.h.clone()).unwrap();
        assert!(bad.validate_normalised().unwrap_err().to_string().contains("joins parts 0 and 0"));
    }

    #[test]
    fn random_instances_plant() {
        let mut r = rng(5);
        let c4 = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        for _ in 0..3 {
            let (inst, sol) = random_psi_instance(&mut r, &c4, 3, 0.3).unwrap();
            assert!(gen_psi_ksi(&inst, 2, Some(&sol)).unwrap().verify_planted().unwrap());
            assert!(gen_npsi_22(&inst, Some(&sol)).unwrap().verify_planted().unwrap());
        }
    }
}
