//! Branch and bound for spanning trees whose internal vertices all have
//! degree at least `k`, and the max-min internal degree built on top of it.
//!
//! The edge search is the enumerator's, with one extra rule. A vertex whose
//! tree degree is at least 2 must be able to reach `k`; once its current
//! degree plus its undecided edges falls below `k` while it already has
//! degree 2 or more, the branch is dead. A vertex that can no longer reach
//! `k` is thereby held to degree 1.

use serde::Serialize;

use super::state::EdgeState;
use super::{profile_unchecked, MinInternal, SpanningTree, TreeError};
use crate::budget::{BudgetMeter, SearchBudget, SearchOutcome};
use crate::graph::Graph;
use crate::parallel::first_found;

struct HistSearch<'m> {
    state: EdgeState,
    k: usize,
    meter: &'m BudgetMeter,
    nodes: u64,
}

enum Step {
    Found(SpanningTree),
    Exhausted,
    Cancelled,
    Done,
}

impl<'m> HistSearch<'m> {
    fn new(g: &Graph, k: usize, meter: &'m BudgetMeter) -> Self {
        HistSearch {
            state: EdgeState::new(g),
            k,
            meter,
            nodes: 0,
        }
    }

    fn vertex_ok(&self, v: usize) -> bool {
        let deg = self.state.tree_degree[v];
        deg < 2 || deg + self.state.open[v] >= self.k
    }

    /// Applies the decision and reports whether both endpoints stay viable.
    fn try_apply(&mut self, pos: usize, include: bool) -> bool {
        self.state.apply(pos, include);
        let (u, v) = self.state.edges[pos].endpoints();
        if self.vertex_ok(u) && self.vertex_ok(v) {
            true
        } else {
            self.state.undo(pos, include);
            false
        }
    }

    fn leaf_ok(&self) -> bool {
        self.state
            .tree_degree
            .iter()
            .all(|&deg| deg <= 1 || deg >= self.k)
    }

    fn run(&mut self, pos: usize, cancelled: &dyn Fn() -> bool) -> Step {
        self.nodes += 1;
        if !self.meter.tick() {
            return Step::Exhausted;
        }
        if cancelled() {
            return Step::Cancelled;
        }
        if pos == self.state.edge_count() {
            return if self.leaf_ok() {
                Step::Found(self.state.tree())
            } else {
                Step::Done
            };
        }
        let (options, count) = self.state.branches(pos);
        for &include in &options[..count] {
            if !self.try_apply(pos, include) {
                continue;
            }
            let step = self.run(pos + 1, cancelled);
            self.state.undo(pos, include);
            if !matches!(step, Step::Done) {
                return step;
            }
        }
        Step::Done
    }

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
            if !self.try_apply(pos, include) {
                continue;
            }
            path.push(include);
            self.frontier(pos + 1, depth, path, out);
            path.pop();
            self.state.undo(pos, include);
        }
    }
}

fn step_outcome(step: Step) -> SearchOutcome<SpanningTree> {
    match step {
        Step::Found(t) => SearchOutcome::Found(t),
        Step::Done => SearchOutcome::Infeasible,
        // a cancelled subtree lies after a found witness and is never reported
        Step::Exhausted | Step::Cancelled => SearchOutcome::Indeterminate,
    }
}

fn check_input(g: &Graph, k: usize) -> Result<(), TreeError> {
    if k < 2 {
        return Err(TreeError::ThresholdTooSmall(k));
    }
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    Ok(())
}

/// The outcome and the number of search nodes it took.
fn decide(
    g: &Graph,
    k: usize,
    meter: &BudgetMeter,
    workers: usize,
) -> (SearchOutcome<SpanningTree>, u64) {
    let mut search = HistSearch::new(g, k, meter);
    if workers <= 1 {
        let step = search.run(0, &|| false);
        return (step_outcome(step), search.nodes);
    }
    let depth = search
        .state
        .edge_count()
        .min(2 * workers.ilog2() as usize + 6);
    let mut prefixes = Vec::new();
    search.frontier(0, depth, &mut Vec::new(), &mut prefixes);
    first_found(prefixes, workers, |prefix, cancelled| {
        let mut sub = HistSearch::new(g, k, meter);
        for (pos, &include) in prefix.iter().enumerate() {
            sub.state.apply(pos, include);
        }
        let step = sub.run(prefix.len(), cancelled);
        (step_outcome(step), sub.nodes)
    })
}

/// Searches for a spanning tree of `g` in which every internal vertex has
/// tree degree at least `k`. `Found` carries a witness, `Infeasible` is an
/// exhaustive refutation, `Indeterminate` means the budget ran out.
pub fn exists_tree_all_internal_at_least(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
) -> Result<SearchOutcome<SpanningTree>, TreeError> {
    exists_tree_all_internal_at_least_parallel(g, k, budget, 1)
}

pub fn exists_tree_all_internal_at_least_parallel(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
    workers: usize,
) -> Result<SearchOutcome<SpanningTree>, TreeError> {
    check_input(g, k)?;
    let meter = BudgetMeter::new(budget);
    Ok(decide(g, k, &meter, workers).0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MmidResult {
    pub value: MinInternal,
    pub witness: SpanningTree,
    /// True iff `value` is proven optimal; otherwise it is a lower bound.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Largest `k` such that some spanning tree has every internal degree at
/// least `k`. Thresholds are tried upward from 2 with one shared budget.
pub fn max_min_internal_degree(g: &Graph, budget: SearchBudget) -> Result<MmidResult, TreeError> {
    max_min_internal_degree_parallel(g, budget, 1)
}

pub fn max_min_internal_degree_parallel(
    g: &Graph,
    budget: SearchBudget,
    workers: usize,
) -> Result<MmidResult, TreeError> {
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let n = g.vertex_count();
    let meter = BudgetMeter::new(budget);
    let first = bfs_tree(g);
    if n <= 2 {
        return Ok(MmidResult {
            value: MinInternal::NoInternal,
            witness: first,
            exhaustive: true,
            nodes: 0,
        });
    }
    // any tree on n >= 3 vertices has internal vertices, all of degree >= 2
    let mut best = (2, first);
    let max_degree = g.max_degree().expect("n >= 3");
    let mut exhaustive = true;
    let mut nodes = 0;
    for k in 3..=max_degree {
        let (outcome, visited) = decide(g, k, &meter, workers);
        nodes += visited;
        match outcome {
            SearchOutcome::Found(t) => best = (k, t),
            SearchOutcome::Infeasible => break,
            SearchOutcome::Indeterminate => {
                exhaustive = false;
                break;
            }
        }
    }
    let (k, witness) = best;
    debug_assert!(profile_unchecked(n, &witness).min_internal_degree >= MinInternal::Degree(k));
    Ok(MmidResult {
        value: MinInternal::Degree(k),
        witness,
        exhaustive,
        nodes,
    })
}

fn bfs_tree(g: &Graph) -> SpanningTree {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut queue = std::collections::VecDeque::new();
    if n > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                edges.push(crate::graph::Edge::new(u, v));
                queue.push_back(v);
            }
        }
    }
    edges.sort_unstable();
    SpanningTree::from_sorted_unchecked(edges)
}
