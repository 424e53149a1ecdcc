//! Gadget generators from the hardness reductions, each with a planted
//! solution derived from a known solution of the source instance.
//!
//! Only the planted direction is checked (applying the planted family gives
//! the promised connectivity). That no-instances map to no-instances is not
//! verified for the PSI and NPSI gadgets, whose search spaces are too large.

mod hardness;
mod packing;
mod psi;

pub use hardness::{gen_do_m22inv, gen_push_n1, DO_PLANT_LIMIT};
pub use packing::{gen_hm, gen_hm_with_matching, gen_p3p, gen_p3p_with_packing};
pub use psi::{gen_npsi_22, gen_psi_ksi, random_psi_instance, triangle_psi_instance, PsiInstance};

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, precondition, Error, Result};
use crate::flow::is_k_arc_strong;
use crate::format::{content_lines, parse_family, parse_number};
use crate::graph::{rotative_tournament, MultiDigraph};
use crate::inversion::{apply_inversions, InversionFamily};
use crate::oracles::SizeMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    P3p,
    Hm,
    DoM22inv,
    PushN1,
    PsiKsi,
    Npsi22,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 6] = [
        ReductionKind::P3p,
        ReductionKind::Hm,
        ReductionKind::DoM22inv,
        ReductionKind::PushN1,
        ReductionKind::PsiKsi,
        ReductionKind::Npsi22,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::P3p => "p3p",
            ReductionKind::Hm => "hm",
            ReductionKind::DoM22inv => "do-m22inv",
            ReductionKind::PushN1 => "push-n1",
            ReductionKind::PsiKsi => "psi-ksi",
            ReductionKind::Npsi22 => "npsi-22",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown reduction kind `{s}`")))
    }
}

/// A generated instance of "make `digraph` k-arc-strong with inversions of
/// `p` vertices (in `mode`), using at most `ell` of them when given".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub digraph: MultiDigraph,
    pub kind: ReductionKind,
    pub k: usize,
    pub p: usize,
    pub mode: SizeMode,
    pub ell: Option<usize>,
    /// The optimum value the reduction predicts, when it pins one down.
    pub predicted: Option<usize>,
    /// What each vertex stands for in the source instance.
    pub labels: Vec<String>,
    pub planted: Option<InversionFamily>,
}

impl ReductionInstance {
    /// Whether the planted family exists, respects the size constraints, and
    /// makes the digraph k-arc-strong.
    pub fn verify_planted(&self) -> Result<bool> {
        let Some(f) = &self.planted else {
            return Ok(false);
        };
        let sizes_ok = match self.mode {
            SizeMode::Exact => f.all_of_size(self.p),
            SizeMode::AtMost => f.max_set_size() <= self.p,
        };
        let count_ok = self.ell.map_or(true, |l| f.len() <= l);
        Ok(sizes_ok && count_ok && is_k_arc_strong(&apply_inversions(&self.digraph, f)?, self.k))
    }

    /// Line-based sidecar text with parameters, labels and the planted family.
    pub fn meta(&self) -> String {
        let mut out = format!("kind: {}\nk: {}\np: {}\n", self.kind, self.k, self.p);
        out += &format!("mode: {}\n", if self.mode == SizeMode::Exact { "exact" } else { "at-most" });
        if let Some(l) = self.ell {
            out += &format!("ell: {l}\n");
        }
        if let Some(v) = self.predicted {
            out += &format!("predicted: {v}\n");
        }
        for (v, label) in self.labels.iter().enumerate() {
            out += &format!("label {v}: {label}\n");
        }
        if let Some(f) = &self.planted {
            out += "planted:\n";
            out += &f.to_string();
        }
        out
    }
}

/// Fields of a sidecar, as read back by [`parse_meta`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub kind: ReductionKind,
    pub k: usize,
    pub p: usize,
    pub mode: SizeMode,
    pub ell: Option<usize>,
    pub predicted: Option<usize>,
    pub labels: Vec<String>,
    pub planted: Option<InversionFamily>,
}

pub fn parse_meta(text: &str) -> Result<Meta> {
    let err = |line, message: String| Error::Parse { line, message };
    let (mut kind, mut k, mut p, mut mode) = (None, None, None, SizeMode::Exact);
    let (mut ell, mut predicted, mut labels, mut planted) = (None, None, Vec::new(), None);
    let mut lines = content_lines(text).peekable();
    while let Some((line, content)) = lines.next() {
        if content == "planted:" {
            let rest: Vec<String> = lines.by_ref().map(|(_, l)| l.to_string()).collect();
            planted = Some(parse_family(&rest.join("\n"))?);
            break;
        }
        let (key, value) = content.split_once(':').ok_or_else(|| err(line, "expected `key: value`".into()))?;
        let value = value.trim();
        match key {
            "kind" => kind = Some(value.parse().map_err(|e: Error| err(line, e.to_string()))?),
            "k" => k = Some(parse_number(line, value)?),
            "p" => p = Some(parse_number(line, value)?),
            "ell" => ell = Some(parse_number(line, value)?),
            "predicted" => predicted = Some(parse_number(line, value)?),
            "mode" => {
                mode = match value {
                    "exact" => SizeMode::Exact,
                    "at-most" => SizeMode::AtMost,
                    _ => return Err(err(line, format!("unknown mode `{value}`"))),
                }
            }
            _ => {
                let index = key.strip_prefix("label ").map(|i| parse_number(line, i)).transpose()?;
                if index != Some(labels.len()) {
                    return Err(err(line, format!("unexpected key `{key}`")));
                }
                labels.push(value.to_string());
            }
        }
    }
    let missing = |what: &str| err(1, format!("missing `{what}` line"));
    Ok(Meta {
        kind: kind.ok_or_else(|| missing("kind"))?,
        k: k.ok_or_else(|| missing("k"))?,
        p: p.ok_or_else(|| missing("p"))?,
        mode,
        ell,
        predicted,
        labels,
        planted,
    })
}

/// A k-arc-strong tournament on `m` vertices: the rotative tournament when
/// `m` is odd, otherwise the rotative tournament on `m+1` vertices minus its
/// last vertex. Checked before returning.
pub fn tournament_of_order(m: usize, k: usize) -> Result<MultiDigraph> {
    if m <= 1 {
        return Ok(MultiDigraph::new(m));
    }
    let t = if m % 2 == 1 {
        rotative_tournament(m)?
    } else {
        rotative_tournament(m + 1)?.induced(&(0..m).collect::<Vec<_>>())
    };
    if !is_k_arc_strong(&t, k) {
        return precondition(format!("no {k}-arc-strong tournament of order {m} from this construction"));
    }
    Ok(t)
}

/// Copies `t` onto the vertices `at` of `d`.
fn place(d: &mut MultiDigraph, t: &MultiDigraph, at: &[usize]) {
    for (u, v, m) in t.arcs() {
        d.add_arcs(at[u], at[v], m).expect("distinct vertices");
    }
}

/// Adds `count` arcs from `from` to `to` between pairs that are not yet
/// adjacent, spreading endpoints round-robin so that no pair repeats and
/// no digon appears.
fn add_bundle(d: &mut MultiDigraph, from: &[usize], to: &[usize], count: usize) -> Result<()> {
    let (nf, nt) = (from.len(), to.len());
    let mut added = 0;
    for t in 0..nf * nt {
        if added == count {
            break;
        }
        let (q, i) = (t / nf, t % nf);
        let (a, b) = (from[i], to[(q + i) % nt]);
        if a != b && !d.has_arc(a, b) && !d.has_arc(b, a) {
            d.add_arc(a, b)?;
            added += 1;
        }
    }
    if added < count {
        return invalid(format!("cannot place {count} digon-free arcs between the given sets"));
    }
    Ok(())
}

/// Consecutive id ranges handed out in construction order.
struct Layout {
    next: usize,
    labels: Vec<String>,
}

impl Layout {
    fn new() -> Self {
        Layout { next: 0, labels: Vec::new() }
    }

    fn one(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.next += 1;
        self.next - 1
    }

    fn many(&mut self, count: usize, label: impl Fn(usize) -> String) -> Vec<usize> {
        (0..count).map(|i| self.one(label(i))).collect()
    }
}
