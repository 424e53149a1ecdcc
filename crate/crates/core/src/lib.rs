//! Making directed graphs k-arc-strong by inverting vertex sets.
//!
//! Inverting a set `X` of vertices reverses every arc with both ends in
//! `X`. The crate decides when a digraph can be made k-arc-strong by
//! inversions of sets of a fixed size `p`, builds such inversion families
//! (exactly on small inputs, approximately on large ones), and generates
//! reduction gadgets with planted solutions for testing solvers.

pub mod approx;
pub mod error;
pub mod feasibility;
pub mod flow;
pub mod format;
pub mod frames;
pub mod generators;
pub mod gf2;
pub mod graph;
pub mod inversion;
pub mod obstruction;
pub mod oracles;
pub mod reductions;
pub(crate) mod search;
pub mod simulation;

pub use error::{Error, Result};
pub use flow::{edge_connectivity, is_2k_edge_connected, is_k_arc_strong, k_arc_strong_violation};
pub use frames::{frames, FramePartition};
pub use graph::{Cut, Lambda, MultiDigraph, Multigraph};
pub use inversion::{apply_inversions, push, InversionFamily};
