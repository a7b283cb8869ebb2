//! Include/exclude edge search state shared by the enumerator and the
//! degree-constrained solvers. Edges are decided in canonical order; an
//! included edge contracts its endpoints, an excluded edge is removed from
//! the remaining graph.

use std::collections::VecDeque;

use super::{RollbackDsu, SpanningTree};
use crate::graph::{Edge, Graph};

pub(crate) struct EdgeState {
    pub edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
    dsu: RollbackDsu,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    pub tree_degree: Vec<usize>,
    /// Undecided edges at each vertex.
    pub open: Vec<usize>,
    seen: Vec<bool>,
    queue: VecDeque<usize>,
}

impl EdgeState {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let edges = g.edges();
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.lo()].push(i);
            incident[e.hi()].push(i);
        }
        EdgeState {
            excluded: vec![false; edges.len()],
            open: (0..n).map(|v| g.degree(v)).collect(),
            edges,
            incident,
            dsu: RollbackDsu::new(n),
            chosen: Vec::with_capacity(n),
            tree_degree: vec![0; n],
            seen: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn forms_cycle(&self, pos: usize) -> bool {
        let e = self.edges[pos];
        self.dsu.same(e.lo(), e.hi())
    }

    pub fn include(&mut self, pos: usize) {
        let (u, v) = self.edges[pos].endpoints();
        let merged = self.dsu.union(u, v);
        debug_assert!(merged);
        self.chosen.push(pos);
        self.tree_degree[u] += 1;
        self.tree_degree[v] += 1;
        self.open[u] -= 1;
        self.open[v] -= 1;
    }

    pub fn undo_include(&mut self, pos: usize) {
        let (u, v) = self.edges[pos].endpoints();
        self.dsu.rollback();
        self.chosen.pop();
        self.tree_degree[u] -= 1;
        self.tree_degree[v] -= 1;
        self.open[u] += 1;
        self.open[v] += 1;
    }

    pub fn exclude(&mut self, pos: usize) {
        let (u, v) = self.edges[pos].endpoints();
        self.excluded[pos] = true;
        self.open[u] -= 1;
        self.open[v] -= 1;
    }

    pub fn undo_exclude(&mut self, pos: usize) {
        let (u, v) = self.edges[pos].endpoints();
        self.excluded[pos] = false;
        self.open[u] += 1;
        self.open[v] += 1;
    }

    /// Decisions worth trying for edge `pos`, include first: a cycle edge
    /// can only be excluded, a bridge of the remaining graph can only be
    /// included.
    pub fn branches(&mut self, pos: usize) -> ([bool; 2], usize) {
        if self.forms_cycle(pos) {
            ([false, false], 1)
        } else if self.is_bridge_of_remaining(pos) {
            ([true, true], 1)
        } else {
            ([true, false], 2)
        }
    }

    pub fn apply(&mut self, pos: usize, include: bool) {
        if include {
            self.include(pos)
        } else {
            self.exclude(pos)
        }
    }

    pub fn undo(&mut self, pos: usize, include: bool) {
        if include {
            self.undo_include(pos)
        } else {
            self.undo_exclude(pos)
        }
    }

    /// True if removing edge `pos` would disconnect the graph of edges that
    /// are not excluded.
    pub fn is_bridge_of_remaining(&mut self, pos: usize) -> bool {
        let (src, dst) = self.edges[pos].endpoints();
        self.seen.iter_mut().for_each(|s| *s = false);
        self.queue.clear();
        self.seen[src] = true;
        self.queue.push_back(src);
        while let Some(u) = self.queue.pop_front() {
            for &i in &self.incident[u] {
                if i == pos || self.excluded[i] {
                    continue;
                }
                let w = self.edges[i].other(u);
                if w == dst {
                    return false;
                }
                if !self.seen[w] {
                    self.seen[w] = true;
                    self.queue.push_back(w);
                }
            }
        }
        true
    }

    pub fn tree(&self) -> SpanningTree {
        let mut edges: Vec<Edge> = self.chosen.iter().map(|&i| self.edges[i]).collect();
        edges.sort_unstable();
        SpanningTree::from_sorted_unchecked(edges)
    }
}
