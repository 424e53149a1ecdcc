//! `gen`: seeded instance generation.

use std::path::PathBuf;

use arcinvert::format::emit_mdg;
use arcinvert::generators::{
    random_2k_edge_connected_digraph, random_bipartite_graph, random_digraph, random_multigraph, random_subset,
    random_uniform_hypergraph, rng, star_matching_obstruction,
};
use arcinvert::reductions::{
    gen_do_m22inv, gen_hm, gen_npsi_22, gen_p3p, gen_psi_ksi, gen_push_n1, random_psi_instance, ReductionInstance,
};
use arcinvert::{MultiDigraph, Multigraph};
use clap::Args;

use crate::Failure;

#[derive(Args)]
pub struct GenArgs {
    /// random, star, p3p, hm, do-m22inv, push-n1, psi-ksi or npsi-22.
    kind: String,
    #[arg(long)]
    seed: u64,
    /// Order of the (source) instance; for psi kinds, the number of parts.
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Hyperedge size for `hm`.
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Number of hyperedges for `hm` (default: n).
    #[arg(long)]
    edges: Option<usize>,
    /// Part size for the psi kinds.
    #[arg(long, default_value_t = 3)]
    part_size: usize,
    #[arg(short, long)]
    out: PathBuf,
}

pub fn run(a: &GenArgs) -> Result<String, Failure> {
    let mut r = rng(a.seed);
    let usage = |message: String| Failure { code: 2, message };
    if !(0.0..=1.0).contains(&a.density) {
        return Err(usage(format!("density {} is not a probability", a.density)));
    }
    let inst = match a.kind.as_str() {
        "random" => {
            let d = random_2k_edge_connected_digraph(&mut r, a.n, a.k, a.density, 0.0)
                .unwrap_or_else(|| random_digraph(&mut r, a.n, a.density, 0.0));
            return write(a, &d, None);
        }
        "star" => return write(a, &star_matching_obstruction(a.n.max(3) / 2), None),
        "p3p" => gen_p3p(&random_bipartite_graph(&mut r, a.n / 2, a.n - a.n / 2, a.density), a.k)?,
        "hm" => gen_hm(&random_uniform_hypergraph(&mut r, a.n, a.s, a.edges.unwrap_or(a.n)), a.s, a.k)?,
        "do-m22inv" => {
            let g = random_multigraph(&mut r, a.n, a.density, 1);
            let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
            let single: Vec<(usize, usize)> =
                random_subset(&mut r, edges.len(), edges.len() / 2).into_iter().map(|i| edges[i]).collect();
            gen_do_m22inv(&g, &single)?
        }
        "push-n1" => gen_push_n1(&random_digraph(&mut r, a.n, a.density, 0.0))?,
        "psi-ksi" | "npsi-22" => {
            if a.n < 3 {
                return Err(usage("psi kinds need at least three parts (the pattern is a cycle)".into()));
            }
            let cycle = Multigraph::from_edges(a.n, (0..a.n).map(|i| (i, (i + 1) % a.n)))?;
            let (inst, sol) = random_psi_instance(&mut r, &cycle, a.part_size, a.density)?;
            match a.kind.as_str() {
                "psi-ksi" => gen_psi_ksi(&inst, a.k.max(2), Some(&sol))?,
                _ => gen_npsi_22(&inst, Some(&sol))?,
            }
        }
        other => return Err(usage(format!("unknown instance kind `{other}`"))),
    };
    write(a, &inst.digraph, Some(&inst))
}

fn write(a: &GenArgs, d: &MultiDigraph, inst: Option<&ReductionInstance>) -> Result<String, Failure> {
    std::fs::write(&a.out, emit_mdg(d))?;
    let mut report = format!("wrote: {} (n={} arcs={})\n", a.out.display(), d.n(), d.arc_count());
    if let Some(inst) = inst {
        let mut meta = a.out.clone().into_os_string();
        meta.push(".meta");
        std::fs::write(&meta, inst.meta())?;
        report += &format!("meta: {}\n", PathBuf::from(meta).display());
        report += &format!("k: {} p: {}\n", inst.k, inst.p);
        if let Some(l) = inst.ell {
            report += &format!("ell: {l}\n");
        }
        if let Some(v) = inst.predicted {
            report += &format!("predicted: {v}\n");
        }
        report += &format!("planted-verified: {}\n", inst.verify_planted()?);
    }
    Ok(report)
}
