use crate::error::{unsupported, Result};
use crate::graph::{MultiDigraph, Multigraph};
use crate::search::{OrientationSearch, Variable};

/// Largest order accepted by [`exists_k_arc_strong_orientation`].
pub const ORIENTATION_LIMIT: usize = 12;

/// Exhaustive search for a k-arc-strong orientation of `g`.
///
/// Parallel edges may be split between the two directions. Heavier bundles
/// are decided first and balanced splits are tried first, so whenever an
/// orientation with every doubled edge as a digon exists, that is the one
/// returned.
pub fn exists_k_arc_strong_orientation(g: &Multigraph, k: usize) -> Result<Option<MultiDigraph>> {
    let n = g.n();
    if n > ORIENTATION_LIMIT {
        return unsupported(format!("exhaustive orientation search is limited to n ≤ {ORIENTATION_LIMIT}"));
    }
    let mut edges: Vec<(usize, usize, u32)> = g.edges().collect();
    edges.sort_by_key(|&(u, v, m)| (std::cmp::Reverse(m), u, v));
    let vars: Vec<Variable> = edges
        .iter()
        .map(|&(u, v, m)| {
            let mut splits: Vec<u32> = (0..=m).collect();
            splits.sort_by_key(|&a| ((2 * a as i64 - m as i64).abs(), std::cmp::Reverse(a)));
            Variable { u, v, options: splits.into_iter().map(|a| (a, m - a)).collect() }
        })
        .collect();
    let search = OrientationSearch { n, k, fixed: Vec::new(), vars: vars.clone(), parity: Vec::new() };
    Ok(search.solve().map(|choice| {
        let mut d = MultiDigraph::new(n);
        for (var, o) in vars.iter().zip(choice) {
            let (a, b) = var.options[o];
            d.add_arcs(var.u, var.v, a).expect("valid pair");
            d.add_arcs(var.v, var.u, b).expect("valid pair");
        }
        d
    }))
}
