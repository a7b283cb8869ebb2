use rand::Rng;

use super::{SpanningTree, TreeError};
use crate::graph::{Edge, Graph};

/// Uniformly random spanning tree by Wilson's loop-erased random walks,
/// rooted at vertex 0.
pub fn random_spanning_tree<R: Rng + ?Sized>(
    g: &Graph,
    rng: &mut R,
) -> Result<SpanningTree, TreeError> {
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let n = g.vertex_count();
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n];
    if n > 0 {
        in_tree[0] = true;
    }
    for start in 0..n {
        let mut u = start;
        while !in_tree[u] {
            let nbrs = g.neighbors(u);
            next[u] = nbrs[rng.gen_range(0..nbrs.len())];
            u = next[u];
        }
        // retrace: following `next` from start now gives the loop-erased path
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    let mut edges: Vec<Edge> = (1..n).map(|v| Edge::new(v, next[v])).collect();
    edges.sort_unstable();
    Ok(SpanningTree::from_sorted_unchecked(edges))
}
