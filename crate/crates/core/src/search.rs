//! Backtracking search for k-arc-strong orientations.
//!
//! Each variable is a vertex pair with a list of options, an option being
//! the multiplicities `(u→v, v→u)` it places. Binary variables may be
//! tied by parity constraints `Σ bits = rhs` over GF(2), where bit 1 means
//! "second option". A node is pruned when the constraints restricted to
//! the unassigned variables are inconsistent, or when even the most
//! generous completion is not k-arc-strong; it succeeds early when the
//! assigned part alone is already k-arc-strong.

use crate::flow::{is_k_edge_connected, FlowNet};
use crate::gf2::{solve, Bits};
use crate::graph::Multigraph;

#[derive(Clone, Debug)]
pub(crate) struct Variable {
    pub u: usize,
    pub v: usize,
    pub options: Vec<(u32, u32)>,
}

#[derive(Clone, Debug)]
pub(crate) struct OrientationSearch {
    pub n: usize,
    pub k: usize,
    pub fixed: Vec<(usize, usize, u32)>,
    pub vars: Vec<Variable>,
    pub parity: Vec<(Bits, bool)>,
}

fn strong(n: usize, k: usize, arcs: &[(usize, usize, u32)]) -> bool {
    if n <= 1 || k == 0 {
        return true;
    }
    let mut outd = vec![0usize; n];
    let mut ind = vec![0usize; n];
    for &(u, v, m) in arcs {
        outd[u] += m as usize;
        ind[v] += m as usize;
    }
    if outd.iter().chain(&ind).any(|&d| d < k) {
        return false;
    }
    let mut net = FlowNet::directed(n, arcs.iter().copied());
    (1..n).all(|v| net.max_flow(0, v, k) >= k && net.max_flow(v, 0, k) >= k)
}

impl OrientationSearch {
    /// Variables are visited in their given order.
    pub fn solve(&self) -> Option<Vec<usize>> {
        let mut under = Multigraph::new(self.n);
        for &(u, v, m) in &self.fixed {
            under.add_edges(u, v, m).expect("valid arc");
        }
        for var in &self.vars {
            let widest = var.options.iter().map(|&(a, b)| a + b).max().unwrap_or(0);
            under.add_edges(var.u, var.v, widest).expect("valid pair");
        }
        if !is_k_edge_connected(&under, 2 * self.k) {
            return None;
        }
        debug_assert!(self.parity.iter().all(|(row, _)| row.ones().all(|i| self.vars[i].options.len() == 2)));
        let mut assign = vec![None; self.vars.len()];
        self.dfs(0, &mut assign).then(|| assign.into_iter().map(|a| a.unwrap_or(0)).collect())
    }

    fn reduced_parity(&self, assign: &[Option<usize>]) -> Vec<(Bits, bool)> {
        self.parity
            .iter()
            .map(|(row, rhs)| {
                let mut r = row.clone();
                let mut b = *rhs;
                for i in row.ones() {
                    if let Some(o) = assign[i] {
                        r.set(i, false);
                        b ^= o == 1;
                    }
                }
                (r, b)
            })
            .collect()
    }

    fn arcs(&self, assign: &[Option<usize>], generous: bool) -> Vec<(usize, usize, u32)> {
        let mut arcs = self.fixed.clone();
        for (var, a) in self.vars.iter().zip(assign) {
            let (x, y) = match a {
                Some(o) => var.options[*o],
                None if generous => (
                    var.options.iter().map(|o| o.0).max().unwrap_or(0),
                    var.options.iter().map(|o| o.1).max().unwrap_or(0),
                ),
                None => (0, 0),
            };
            if x > 0 {
                arcs.push((var.u, var.v, x));
            }
            if y > 0 {
                arcs.push((var.v, var.u, y));
            }
        }
        arcs
    }

    fn dfs(&self, next: usize, assign: &mut Vec<Option<usize>>) -> bool {
        let rows = self.reduced_parity(assign);
        let Some(completion) = solve(&rows, self.vars.len()) else {
            return false;
        };
        if !strong(self.n, self.k, &self.arcs(assign, true)) {
            return false;
        }
        if strong(self.n, self.k, &self.arcs(assign, false)) {
            for (i, a) in assign.iter_mut().enumerate() {
                if a.is_none() {
                    *a = Some(usize::from(completion.get(i)));
                }
            }
            return true;
        }
        let Some(i) = (next..self.vars.len()).find(|&i| assign[i].is_none()) else {
            return false;
        };
        for o in 0..self.vars[i].options.len() {
            assign[i] = Some(o);
            if self.dfs(i + 1, assign) {
                return true;
            }
        }
        assign[i] = None;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(u: usize, v: usize) -> Variable {
        Variable { u, v, options: vec![(1, 0), (0, 1)] }
    }

    #[test]
    fn finds_cycle_orientation() {
        let s = OrientationSearch {
            n: 4,
            k: 1,
            fixed: vec![],
            vars: vec![binary(0, 1), binary(1, 2), binary(2, 3), binary(0, 3)],
            parity: vec![],
        };
        let a = s.solve().unwrap();
        assert_eq!(a, vec![0, 0, 0, 1]);
    }

    #[test]
    fn parity_can_forbid_every_strong_orientation() {
        // The strong orientations of a triangle are the patterns 000 and
        // 111; x0 = x1 together with x0 ≠ x2 excludes both.
        let mut r1 = Bits::zeros(3);
        r1.set(0, true);
        r1.set(1, true);
        let mut r2 = Bits::zeros(3);
        r2.set(0, true);
        r2.set(2, true);
        let s = OrientationSearch {
            n: 3,
            k: 1,
            fixed: vec![],
            vars: vec![binary(0, 1), binary(1, 2), Variable { u: 2, v: 0, options: vec![(1, 0), (0, 1)] }],
            parity: vec![(r1, false), (r2, true)],
        };
        assert!(s.solve().is_none());
    }
}
