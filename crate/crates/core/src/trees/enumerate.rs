//! Backtracking enumeration of spanning trees.
//!
//! Edges are decided in canonical order, include branch first. Including an
//! edge that would close a cycle is never tried, and excluding an edge is
//! only tried when the remaining graph stays connected, so every leaf of the
//! search is a spanning tree and each tree is produced exactly once.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use super::state::EdgeState;
use super::{SpanningTree, TreeError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationStats {
    pub trees: u64,
    /// False if the visitor stopped the enumeration early.
    pub completed: bool,
}

struct Enumerator {
    state: EdgeState,
    trees: u64,
}

impl Enumerator {
    fn run<F>(&mut self, pos: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&SpanningTree) -> ControlFlow<()>,
    {
        if pos == self.state.edge_count() {
            self.trees += 1;
            return visit(&self.state.tree());
        }
        let (options, count) = self.state.branches(pos);
        for &include in &options[..count] {
            self.state.apply(pos, include);
            let flow = self.run(pos + 1, visit);
            self.state.undo(pos, include);
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Decision prefixes covering the search tree down to `depth` edges.
    fn frontier(
        &mut self,
        pos: usize,
        depth: usize,
        path: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
    ) {
        if pos == depth {
            out.push(path.clone());
            return;
        }
        let (options, count) = self.state.branches(pos);
        for &include in &options[..count] {
            self.state.apply(pos, include);
            path.push(include);
            self.frontier(pos + 1, depth, path, out);
            path.pop();
            self.state.undo(pos, include);
        }
    }
}

/// Calls `visit` on every spanning tree of `g` in deterministic order.
/// Returning `ControlFlow::Break` stops the enumeration.
pub fn enumerate_spanning_trees<F>(g: &Graph, mut visit: F) -> Result<EnumerationStats, TreeError>
where
    F: FnMut(&SpanningTree) -> ControlFlow<()>,
{
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let mut en = Enumerator {
        state: EdgeState::new(g),
        trees: 0,
    };
    let flow = en.run(0, &mut visit);
    Ok(EnumerationStats {
        trees: en.trees,
        completed: flow.is_continue(),
    })
}

/// Multi-threaded enumeration. Tree counts are independent of scheduling;
/// the order in which `visit` sees trees is not.
pub fn enumerate_spanning_trees_parallel<F>(
    g: &Graph,
    workers: usize,
    visit: F,
) -> Result<EnumerationStats, TreeError>
where
    F: Fn(&SpanningTree) -> ControlFlow<()> + Sync,
{
    if workers <= 1 {
        return enumerate_spanning_trees(g, &visit);
    }
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let mut root = Enumerator {
        state: EdgeState::new(g),
        trees: 0,
    };
    let depth = root
        .state
        .edge_count()
        .min(2 * workers.ilog2() as usize + 6);
    let mut prefixes = Vec::new();
    root.frontier(0, depth, &mut Vec::new(), &mut prefixes);

    let stop = AtomicBool::new(false);
    let total = AtomicU64::new(0);
    let work = || {
        prefixes.par_iter().for_each(|prefix| {
            if stop.load(Ordering::Relaxed) {
                return;
            }
            let mut en = Enumerator {
                state: EdgeState::new(g),
                trees: 0,
            };
            for (pos, &include) in prefix.iter().enumerate() {
                en.state.apply(pos, include);
            }
            let flow = en.run(prefix.len(), &mut |t: &SpanningTree| {
                if stop.load(Ordering::Relaxed) {
                    return ControlFlow::Break(());
                }
                visit(t)
            });
            total.fetch_add(en.trees, Ordering::Relaxed);
            if flow.is_break() {
                stop.store(true, Ordering::Relaxed);
            }
        })
    };
    match ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
    Ok(EnumerationStats {
        trees: total.into_inner(),
        completed: !stop.into_inner(),
    })
}
