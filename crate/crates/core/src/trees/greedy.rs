use serde::Serialize;

use super::{SpanningTree, TreeError};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyTree {
    pub tree: SpanningTree,
    pub leaves: usize,
}

/// Grows a tree from vertex 0. Each round picks the tree vertex with the
/// most unreached neighbors (lowest id on ties) and attaches all of them.
pub fn max_leaf_greedy(g: &Graph) -> Result<GreedyTree, TreeError> {
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let n = g.vertex_count();
    let mut reached = vec![false; n];
    let mut in_tree = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n > 0 {
        reached[0] = true;
        in_tree.push(0);
    }
    let gain = |v: usize, reached: &[bool]| g.neighbors(v).iter().filter(|&&w| !reached[w]).count();
    while edges.len() + 1 < n {
        let best = in_tree
            .iter()
            .copied()
            .map(|v| (gain(v, &reached), std::cmp::Reverse(v)))
            .max()
            .map(|(_, std::cmp::Reverse(v))| v)
            .expect("tree is nonempty");
        for &w in g.neighbors(best) {
            if !reached[w] {
                reached[w] = true;
                in_tree.push(w);
                edges.push(Edge::new(best, w));
            }
        }
    }
    edges.sort_unstable();
    let tree = SpanningTree::from_sorted_unchecked(edges);
    let leaves = tree.degrees(n).iter().filter(|&&d| d == 1).count();
    Ok(GreedyTree { tree, leaves })
}
