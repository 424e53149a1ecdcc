//! Deciding whether inversions of exactly `p` vertices can make a digraph
//! k-arc-strong, and building such families.
//!
//! Above the order thresholds the answer is structural: 2k-edge-connectivity
//! for even `p`, plus the absence of a k-obstruction for odd `p`. Below them
//! the question is decided exhaustively, which inversions permit because
//! they commute and are involutions.

use std::fmt;

use crate::approx::min_k2_inversion_set;
use crate::error::{invalid, precondition, Result};
use crate::flow::{is_2k_edge_connected, is_k_arc_strong};
use crate::graph::{rotative_tournament, MultiDigraph};
use crate::inversion::{apply_inversions, InversionFamily};
use crate::obstruction::{is_k_obstruction, ObstructionCertificate};
use crate::oracles::{gf2_reachable, SizeMode};
use crate::simulation::{simulate_pair, simulate_triple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    NotEdgeConnected,
    Obstruction(ObstructionCertificate),
    EvenThreshold,
    OddThreshold,
    KernelExhaustive,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::NotEdgeConnected => "not-2k-edge-connected",
            Reason::Obstruction(_) => "k-obstruction",
            Reason::EvenThreshold => "threshold-even",
            Reason::OddThreshold => "threshold-odd",
            Reason::KernelExhaustive => "kernel-exhaustive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub answer: bool,
    pub reason: Reason,
    /// Present when the exhaustive path found a family; every set has
    /// exactly `p` vertices.
    pub witness: Option<InversionFamily>,
}

/// Smallest order at which the structural characterisation applies.
pub fn threshold(k: usize, p: usize) -> usize {
    if p % 2 == 0 {
        (p + 2).max(2 * k + 2)
    } else {
        (p + 2).max(4 * k + 2)
    }
}

fn check_args(d: &MultiDigraph, k: usize, p: usize) -> Result<()> {
    if !d.is_digraph() {
        return invalid("feasibility is decided for digraphs only, not multidigraphs");
    }
    if k < 1 || p < 2 {
        return invalid(format!("need k ≥ 1 and p ≥ 2, got k={k}, p={p}"));
    }
    Ok(())
}

pub fn is_kp_invertible(d: &MultiDigraph, k: usize, p: usize) -> Result<FeasibilityVerdict> {
    check_args(d, k, p)?;
    let verdict = |answer, reason| FeasibilityVerdict { answer, reason, witness: None };
    if !is_2k_edge_connected(d, k) {
        return Ok(verdict(false, Reason::NotEdgeConnected));
    }
    if d.n() >= threshold(k, p) {
        if p % 2 == 0 {
            return Ok(verdict(true, Reason::EvenThreshold));
        }
        return Ok(match is_k_obstruction(d, k)? {
            Some(c) => verdict(false, Reason::Obstruction(c)),
            None => verdict(true, Reason::OddThreshold),
        });
    }
    let witness = gf2_reachable(d, k, p, SizeMode::Exact)?;
    Ok(FeasibilityVerdict { answer: witness.is_some(), reason: Reason::KernelExhaustive, witness })
}

/// What the structural characterisation would answer at any order. Compared
/// with [`is_kp_invertible`] below the threshold, it shows where the
/// threshold is actually needed.
pub fn formula_verdict(d: &MultiDigraph, k: usize, p: usize) -> Result<bool> {
    check_args(d, k, p)?;
    if !is_2k_edge_connected(d, k) {
        return Ok(false);
    }
    if p % 2 == 0 {
        return Ok(true);
    }
    if d.n() < 4 * k + 2 {
        return Ok(crate::obstruction::find_certificate_exhaustive(d, k)?.is_none());
    }
    Ok(is_k_obstruction(d, k)?.is_none())
}

/// A family of sets of exactly `p` vertices making `d` k-arc-strong.
///
/// A base family of 2-sets (even `p`) or 3-sets (odd `p`) is found first and
/// each base set is replaced by a simulation plan. Tournaments offer no
/// invisible pair for simulating 2-sets; there an arc whose removal keeps
/// 2k-edge-connectivity is dropped first, since adding an arc back never
/// hurts. Whatever the route cannot handle falls back to the exhaustive
/// search at size `p`.
pub fn construct_witness(d: &MultiDigraph, k: usize, p: usize) -> Result<InversionFamily> {
    check_args(d, k, p)?;
    if is_k_arc_strong(d, k) {
        return Ok(InversionFamily::empty());
    }
    if !is_kp_invertible(d, k, p)?.answer {
        return precondition(format!("digraph is not ({k},{p})-invertible"));
    }
    let family = match simulated_witness(d, k, p)? {
        Some(f) => f,
        None => gf2_reachable(d, k, p, SizeMode::Exact)?.expect("feasibility was established"),
    };
    if !family.all_of_size(p) || !is_k_arc_strong(&apply_inversions(d, &family)?, k) {
        return Err(crate::Error::PreconditionViolated("witness failed verification".into()));
    }
    Ok(family)
}

fn simulated_witness(d: &MultiDigraph, k: usize, p: usize) -> Result<Option<InversionFamily>> {
    if p % 2 == 0 {
        if let Some(f) = via_pairs(d, k, p)? {
            return Ok(Some(f));
        }
        // Drop one arc so that an adjacent-free pair exists.
        for (u, v, _) in d.arcs().collect::<Vec<_>>() {
            let mut sparse = d.clone();
            sparse.remove_arc(u, v);
            if is_2k_edge_connected(&sparse, k) {
                if let Some(f) = via_pairs(&sparse, k, p)? {
                    return Ok(Some(f));
                }
            }
        }
        return Ok(None);
    }
    if d.n() < 5 {
        return Ok(None);
    }
    let Some(base) = gf2_reachable(d, k, 3, SizeMode::Exact)? else {
        return Ok(None);
    };
    let mut family = InversionFamily::empty();
    for s in base.iter() {
        match simulate_triple(d, s, p) {
            Ok(plan) => family = family.symmetric_difference(&plan.sets),
            Err(crate::Error::Unsupported(_) | crate::Error::PreconditionViolated(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(family))
}

/// Base 2-sets from the exact solver, each replaced by a pair plan. Any
/// plan built on `d` works on every digraph containing `d`.
fn via_pairs(d: &MultiDigraph, k: usize, p: usize) -> Result<Option<InversionFamily>> {
    if d.n() < p + 2 {
        return Ok(None);
    }
    let base = min_k2_inversion_set(d, k)?;
    let mut family = InversionFamily::empty();
    for e in base.iter() {
        match simulate_pair(d, e, p) {
            Ok(plan) => family = family.symmetric_difference(&plan.sets),
            Err(crate::Error::Unsupported(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(family))
}

/// The rotative tournament on `2k+1` vertices: k-arc-strong, so every
/// `(k,p)` pair answers yes on it.
pub fn kernel_yes(k: usize) -> MultiDigraph {
    rotative_tournament(2 * k + 1).expect("odd order")
}

/// Two isolated vertices: never k-arc-strong, whatever is inverted.
pub fn kernel_no() -> MultiDigraph {
    MultiDigraph::new(2)
}
