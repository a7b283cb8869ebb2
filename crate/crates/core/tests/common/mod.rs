//! Test corpus and brute-force oracles. Nothing here calls the solvers it
//! is used to check.

#![allow(dead_code)]

use std::ops::ControlFlow;

use spanlab::constructions::build_random_gnp;
use spanlab::graph::{Edge, Graph};
use spanlab::trees::{enumerate_spanning_trees, tree_profile, MinInternal};

/// `count` random graphs on 2..=8 vertices accepted by `keep`, seeded from
/// `base_seed`.
pub fn random_small_graphs(
    count: usize,
    base_seed: u64,
    keep: impl Fn(&Graph) -> bool,
) -> Vec<Graph> {
    let probabilities = [0.3, 0.45, 0.6, 0.8, 1.0];
    let mut out = Vec::with_capacity(count);
    let mut seed = base_seed;
    while out.len() < count {
        let n = 2 + (seed % 7) as usize;
        let p = probabilities[(seed / 7 % 5) as usize];
        let g = build_random_gnp(n, p, seed).unwrap();
        seed += 1;
        if keep(&g) {
            out.push(g);
        }
    }
    out
}

pub fn random_connected_graphs(count: usize, base_seed: u64) -> Vec<Graph> {
    random_small_graphs(count, base_seed, Graph::is_connected)
}

pub fn random_graphs_without_isolated(count: usize, base_seed: u64) -> Vec<Graph> {
    random_small_graphs(count, base_seed, |g| {
        (0..g.vertex_count()).all(|v| g.degree(v) > 0)
    })
}

/// Edges whose deletion increases the number of components.
pub fn brute_force_bridges(g: &Graph) -> Vec<Edge> {
    let base = g.components().len();
    g.edges()
        .into_iter()
        .filter(|&e| g.without_edge(e).components().len() > base)
        .collect()
}

/// Max over all enumerated trees of the min internal degree.
pub fn enumeration_mmid(g: &Graph) -> MinInternal {
    let mut best = MinInternal::Degree(0);
    enumerate_spanning_trees(g, |t| {
        best = best.max(tree_profile(g, t).unwrap().min_internal_degree);
        ControlFlow::Continue(())
    })
    .unwrap();
    best
}

/// Best minimum star size over all set partitions of the vertices into
/// stars (restricted growth strings). None if no star partition exists.
pub fn brute_force_star_optimum(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut labels = vec![0usize; n];
    let mut best = None;
    fn rec(g: &Graph, v: usize, blocks: usize, labels: &mut Vec<usize>, best: &mut Option<usize>) {
        let n = g.vertex_count();
        if v == n {
            let mut worst = usize::MAX;
            for b in 0..blocks {
                let members: Vec<usize> = (0..n).filter(|&u| labels[u] == b).collect();
                if members.len() < 2 {
                    return;
                }
                let is_star = members
                    .iter()
                    .any(|&c| members.iter().all(|&u| u == c || g.has_edge(c, u)));
                if !is_star {
                    return;
                }
                worst = worst.min(members.len() - 1);
            }
            *best = Some(best.map_or(worst, |b: usize| b.max(worst)));
            return;
        }
        for b in 0..=blocks {
            labels[v] = b;
            rec(g, v + 1, blocks.max(b + 1), labels, best);
        }
    }
    if n > 0 {
        rec(g, 0, 0, &mut labels, &mut best);
    }
    best
}

pub fn cayley(m: u64) -> u64 {
    if m <= 2 {
        1
    } else {
        m.pow(m as u32 - 2)
    }
}

/// Spanning-tree count of the counterexample graph as a product of
/// per-clique Cayley counts; the anchor edges contribute a factor 1.
pub fn counterexample_block_count(d: u64, w: u64) -> u128 {
    let core = cayley(d) as u128;
    let pendant = (cayley(d + 1) as u128).pow(d as u32 - 1);
    core * pendant * cayley(w) as u128
}
