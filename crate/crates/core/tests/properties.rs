//! Invariants as proptest properties. Instances are drawn from the seeded
//! generators, so each case is reproducible from its shrunk parameters.

use arcinvert::approx::{approx_kp, min_k2_inversion_set, ApproxOptions};
use arcinvert::feasibility::{construct_witness, is_kp_invertible};
use arcinvert::format::{emit_family, emit_mdg, parse_family, parse_mdg};
use arcinvert::generators::{
    random_2k_edge_connected_digraph, random_bipartite_graph, random_digraph, random_multidigraph, random_multigraph,
    random_subset, random_uniform_hypergraph, rng, star_matching_obstruction,
};
use arcinvert::inversion::{invert, push, push_family};
use arcinvert::obstruction::{
    find_certificate_exhaustive, is_k_obstruction, k_regular_partition, verify_certificate,
};
use arcinvert::oracles::{
    bfs_reachable, exact_inv_kp, gf2_reachable, max_hypergraph_matching, Hypergraph, SizeMode,
};
use arcinvert::reductions::{
    gen_do_m22inv, gen_hm, gen_npsi_22, gen_p3p, gen_psi_ksi, gen_push_n1, parse_meta, random_psi_instance,
};
use arcinvert::simulation::simulate_quintuple;
use arcinvert::{
    apply_inversions, edge_connectivity, frames, is_2k_edge_connected, is_k_arc_strong, InversionFamily, MultiDigraph,
    Multigraph,
};
use itertools::Itertools;
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// All set partitions of `items`.
fn partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![first]);
        out.push(q);
    }
    out
}

/// Smallest family of flippable pairs (at most `limit` of them) making `d`
/// k-arc-strong, by plain enumeration.
fn brute_min_pairs(d: &MultiDigraph, k: usize, limit: usize) -> Option<usize> {
    let pairs = d.flippable_pairs();
    (0..=limit.min(pairs.len())).find(|&size| {
        pairs.iter().combinations(size).any(|c| {
            let f = InversionFamily::new(c.into_iter().map(|&(u, v)| vec![u, v])).unwrap();
            is_k_arc_strong(&apply_inversions(d, &f).unwrap(), k)
        })
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn inversions_are_involutive_and_commute(seed: u64, n in 2usize..9, sets in 0usize..6) {
        let mut r = rng(seed);
        let d = random_multidigraph(&mut r, n, 0.4, 2);
        let mut family: Vec<Vec<usize>> = Vec::new();
        for _ in 0..sets {
            let size = r.gen_range(2..=n);
            family.push(random_subset(&mut r, n, size));
        }
        let f = InversionFamily::new(family.clone()).unwrap();
        let once = apply_inversions(&d, &f).unwrap();
        prop_assert_eq!(&apply_inversions(&once, &f).unwrap(), &d);
        family.reverse();
        prop_assert_eq!(apply_inversions(&d, &InversionFamily::new(family).unwrap()).unwrap(), once);
    }

    #[test]
    fn push_parity_law(seed: u64, n in 3usize..=8, size in 0usize..=6) {
        let mut r = rng(seed);
        let d = random_digraph(&mut r, n, 0.5, 0.2);
        let x = random_subset(&mut r, n, size.min(n));
        let via_family = apply_inversions(&d, &push_family(n, &x).unwrap()).unwrap();
        let pushed = push(&d, &x).unwrap();
        if x.len() % 2 == 0 {
            prop_assert_eq!(via_family, pushed);
        } else {
            let rev = apply_inversions(&d.reversed(), &push_family(n, &x).unwrap()).unwrap();
            prop_assert_eq!(rev, pushed);
        }
    }

    #[test]
    fn certificates_survive_odd_inversions(m in 3usize..=5, seed: u64) {
        let d = star_matching_obstruction(m);
        let n = d.n();
        let cert = is_k_obstruction(&d, 1).unwrap().unwrap();
        let mut r = rng(seed);
        let size = 2 * r.gen_range(1..=(n - 1) / 2) + 1;
        let e = invert(&d, &random_subset(&mut r, n, size)).unwrap();
        prop_assert!(verify_certificate(&e, &cert));
        prop_assert!(!is_k_arc_strong(&e, 1));
    }

    #[test]
    fn strong_digraphs_have_no_certificate(seed: u64, n in 3usize..=7) {
        let mut r = rng(seed);
        let d = random_digraph(&mut r, n, 0.6, 0.2);
        if is_k_arc_strong(&d, 1) {
            prop_assert_eq!(find_certificate_exhaustive(&d, 1).unwrap(), None);
        }
    }

    #[test]
    fn regular_partition_matches_brute_force(seed: u64, n in 3usize..=8, xs in 1usize..=5, k in 1usize..=3) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, n, 0.6, 2);
        if !arcinvert::flow::is_k_edge_connected(&g, k) {
            return Ok(());
        }
        let x = random_subset(&mut r, n, xs.min(n - 1));
        let got = k_regular_partition(&g, k, &x).unwrap();
        let brute = partitions(&x).into_iter().any(|p| p.iter().all(|b| g.cut_of(b) == k));
        prop_assert_eq!(got.is_some(), brute);
        if let Some(parts) = got {
            prop_assert!(parts.iter().all(|b| g.cut_of(b) == k));
            prop_assert_eq!(parts.iter().map(Vec::len).sum::<usize>(), x.len());
        }
    }

    #[test]
    fn not_edge_connected_is_never_feasible(seed: u64, n in 3usize..=8, k in 1usize..=2, p in 2usize..=5) {
        let mut r = rng(seed);
        let d = random_digraph(&mut r, n, 0.4, 0.1);
        let v = is_kp_invertible(&d, k, p).unwrap();
        if !is_2k_edge_connected(&d, k) {
            prop_assert!(!v.answer);
        }
        if v.answer {
            let w = construct_witness(&d, k, p).unwrap();
            prop_assert!(w.all_of_size(p));
            prop_assert!(is_k_arc_strong(&apply_inversions(&d, &w).unwrap(), k));
        }
    }

    #[test]
    fn frames_bounds(seed: u64, n in 2usize..=9, k in 1usize..=3) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, n, 0.5, 2);
        let fp = frames(&g, k);
        let mut all: Vec<usize> = fp.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        prop_assert!(fp.contracted.edge_count() <= (k - 1) * (fp.blocks.len() - 1));
        for b in &fp.blocks {
            prop_assert!(edge_connectivity(&g.induced(b)).at_least(k));
        }
    }

    #[test]
    fn sparse_connectivity_bounds_edges(seed: u64, n in 2usize..=7, k in 1usize..=3) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, n, 0.4, 2);
        let hypothesis = (3u32..1 << n).filter(|m| m.count_ones() >= 2).all(|m| {
            let s: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            !edge_connectivity(&g.induced(&s)).at_least(k + 1)
        });
        if hypothesis {
            prop_assert!(g.edge_count() <= k * (n - 1));
        }
    }

    #[test]
    fn format_round_trips(seed: u64, n in 1usize..=9) {
        let mut r = rng(seed);
        let d = random_multidigraph(&mut r, n, 0.4, 3);
        prop_assert_eq!(&parse_mdg(&emit_mdg(&d)).unwrap(), &d);
        if n >= 2 {
            let f = InversionFamily::new((0..3).map(|_| random_subset(&mut r, n, 2))).unwrap();
            prop_assert_eq!(parse_family(&emit_family(&f)).unwrap(), f);
        }
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn pair_step_is_optimal(seed: u64, n in 3usize..=7, k in 1usize..=2) {
        let mut r = rng(seed);
        let Some(d) = random_2k_edge_connected_digraph(&mut r, n.max(2 * k + 1), k, 0.4, 0.2) else { return Ok(()) };
        let got = min_k2_inversion_set(&d, k);
        match brute_min_pairs(&d, k, 4) {
            Some(best) => prop_assert_eq!(got.unwrap().len(), best),
            None => if let Ok(f) = got { prop_assert!(f.len() > 4) },
        }
    }

    #[test]
    fn pair_count_bounded_by_p_inversions(seed: u64, n in 4usize..=8, p in 3usize..=4) {
        let mut r = rng(seed);
        let k = 1;
        let Some(d) = random_2k_edge_connected_digraph(&mut r, n, k, 0.4, 0.1) else { return Ok(()) };
        let x2 = min_k2_inversion_set(&d, k).unwrap().len();
        if let Some(opt) = exact_inv_kp(&d, k, p, SizeMode::AtMost, 4).unwrap() {
            prop_assert!(x2 <= p * (p - 1) / 2 * opt.len());
            prop_assert!(x2 <= (2 * k - 1) * (p - 1) * opt.len());
        }
    }

    #[test]
    fn approx_output_is_valid(seed: u64, n in 4usize..=9, k in 1usize..=2, p in 2usize..=6) {
        let mut r = rng(seed);
        let Some(d) = random_2k_edge_connected_digraph(&mut r, n.max(2 * k + 1), k, 0.4, 0.2) else { return Ok(()) };
        let (f, trace) = approx_kp(&d, k, p, &ApproxOptions::default()).unwrap();
        prop_assert!(is_k_arc_strong(&apply_inversions(&d, &f).unwrap(), k));
        prop_assert!(f.max_set_size() <= p);
        prop_assert_eq!(f.len(), trace.packed.len() + trace.leftover.len());
        prop_assert_eq!(trace.packed.len() * (p / 2) + trace.leftover.len(), trace.base_pairs.len());
    }

    #[test]
    fn exact_and_gf2_agree(seed: u64, n in 3usize..=7, p in 2usize..=4, mode_le: bool) {
        let mut r = rng(seed);
        let d = random_digraph(&mut r, n, 0.6, 0.2);
        let mode = if mode_le { SizeMode::AtMost } else { SizeMode::Exact };
        let gf2 = gf2_reachable(&d, 1, p, mode).unwrap();
        if let Some(w) = &gf2 {
            prop_assert!(is_k_arc_strong(&apply_inversions(&d, w).unwrap(), 1));
            let exact = exact_inv_kp(&d, 1, p, mode, w.len()).unwrap();
            prop_assert!(exact.is_some_and(|e| e.len() <= w.len()));
        } else {
            prop_assert_eq!(exact_inv_kp(&d, 1, p, mode, 3).unwrap(), None);
        }
        if n <= 6 {
            prop_assert_eq!(bfs_reachable(&d, 1, p, mode).unwrap(), gf2.is_some());
        }
    }

    #[test]
    fn quintuple_plan_size(seed: u64, p in prop::sample::select(vec![5usize, 9]), extra in 2usize..=4) {
        let mut r = rng(seed);
        let n = p + extra;
        let d = random_digraph(&mut r, n, 0.5, 0.2);
        let plan = simulate_quintuple(&d, &random_subset(&mut r, n, 5), p).unwrap();
        prop_assert!(plan.verify(&d).unwrap());
        if p > 5 {
            prop_assert_eq!(plan.sets.len(), (p - 3) * (p - 4) / 2);
        }
    }

    #[test]
    fn two_in_two_out_matchings_are_large(seed: u64, n in 3usize..=14, m in 1usize..=12) {
        let mut r = rng(seed);
        let raw = random_uniform_hypergraph(&mut r, n, 3, m);
        let mut degree = vec![0; n];
        let mut edges = Vec::new();
        for e in raw.edges {
            if e.iter().all(|&v| degree[v] < 2) {
                e.iter().for_each(|&v| degree[v] += 1);
                edges.push(e);
            }
        }
        let used: Vec<usize> = (0..n).filter(|&v| degree[v] > 0).collect();
        let relabel = |v: usize| used.binary_search(&v).unwrap();
        let h = Hypergraph::new(used.len(), edges.iter().map(|e| e.iter().map(|&v| relabel(v)).collect())).unwrap();
        let (x, _) = max_hypergraph_matching(&h).unwrap();
        prop_assert!(9 * x >= h.n);
    }

    #[test]
    fn planted_families_verify(seed: u64, n in 3usize..=6) {
        let mut r = rng(seed);
        let g = random_bipartite_graph(&mut r, n / 2, n - n / 2, 0.5);
        prop_assert!(gen_p3p(&g, 1 + (seed % 2) as usize).unwrap().verify_planted().unwrap());
        let h = random_uniform_hypergraph(&mut r, n, 3, n);
        prop_assert!(gen_hm(&h, 3, 1).unwrap().verify_planted().unwrap());
        let pattern = Multigraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (psi, sol) = random_psi_instance(&mut r, &pattern, 3, 0.3).unwrap();
        prop_assert!(gen_psi_ksi(&psi, 2, Some(&sol)).unwrap().verify_planted().unwrap());
        prop_assert!(gen_npsi_22(&psi, Some(&sol)).unwrap().verify_planted().unwrap());
        let multigraph = random_multigraph(&mut r, n, 0.7, 1);
        let dm = gen_do_m22inv(&multigraph, &[]).unwrap();
        if let Some(f) = &dm.planted {
            prop_assert!(is_k_arc_strong(&apply_inversions(&dm.digraph, f).unwrap(), 2));
        }
        let push_inst = gen_push_n1(&random_digraph(&mut r, n, 0.5, 0.0)).unwrap();
        if push_inst.planted.is_some() {
            prop_assert!(push_inst.verify_planted().unwrap());
        }
        let meta = parse_meta(&dm.meta()).unwrap();
        prop_assert_eq!(meta.planted, dm.planted);
    }
}

#[test]
fn meta_round_trips_planted_family() {
    let h = Hypergraph::new(6, [vec![0, 1, 2], vec![3, 4, 5], vec![1, 3, 5]]).unwrap();
    let inst = gen_hm(&h, 3, 1).unwrap();
    let meta = parse_meta(&inst.meta()).unwrap();
    assert_eq!(meta.planted, inst.planted);
    assert_eq!(meta.predicted, inst.predicted);
}
