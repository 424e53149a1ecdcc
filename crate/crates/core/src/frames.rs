//! Decomposition of a multigraph into maximal k-edge-connected induced
//! blocks.

use crate::flow::global_min_cut;
use crate::graph::{Lambda, Multigraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramePartition {
    pub k: usize,
    /// Sorted blocks, ordered by smallest vertex.
    pub blocks: Vec<Vec<usize>>,
    /// One vertex per block, in block order.
    pub contracted: Multigraph,
}

/// Splits along global minimum cuts until every piece is k-edge-connected.
/// A k-edge-connected induced subgraph never crosses a cut with fewer than
/// `k` edges, so every piece produced this way is maximal.
pub fn frames(g: &Multigraph, k: usize) -> FramePartition {
    let mut blocks = Vec::new();
    let mut pending = vec![(0..g.n()).collect::<Vec<_>>()];
    while let Some(piece) = pending.pop() {
        if piece.is_empty() {
            continue;
        }
        let sub = g.induced(&piece);
        match global_min_cut(&sub) {
            Some((value, side)) if !Lambda::Finite(value).at_least(k) => {
                let mut inside = vec![false; piece.len()];
                for &i in &side {
                    inside[i] = true;
                }
                let (a, b): (Vec<_>, Vec<_>) = (0..piece.len()).partition(|&i| inside[i]);
                pending.push(a.into_iter().map(|i| piece[i]).collect());
                pending.push(b.into_iter().map(|i| piece[i]).collect());
            }
            _ => blocks.push(piece),
        }
    }
    blocks.sort();
    let contracted = g.contract(&blocks);
    FramePartition { k, blocks, contracted }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_for_k1() {
        let g = Multigraph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let f = frames(&g, 1);
        assert_eq!(f.blocks, vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(f.contracted.edge_count(), 0);
    }

    #[test]
    fn two_triangles_with_bridge() {
        let g = Multigraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let f = frames(&g, 2);
        assert_eq!(f.blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(f.contracted.edge_count(), 1);
    }

    #[test]
    fn k5_single_block() {
        let g = Multigraph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
        assert_eq!(frames(&g, 3).blocks, vec![vec![0, 1, 2, 3, 4]]);
    }
}
