//! Deterministic fan-out of a search over independent subproblems.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use crate::budget::SearchOutcome;

/// Runs `solve` on every subproblem with `workers` threads. Returns the
/// `Found` with the lowest subproblem index, else `Indeterminate` if any
/// subproblem ran out of budget, else `Infeasible`. `solve` receives a
/// cancel check that turns true once an earlier subproblem has found a
/// solution, and reports the nodes it visited.
///
/// The node total covers subproblems up to and including the winner, which
/// always run to completion, so it does not depend on scheduling unless the
/// budget runs out.
pub fn first_found<P, T, F>(
    subproblems: Vec<P>,
    workers: usize,
    solve: F,
) -> (SearchOutcome<T>, u64)
where
    P: Send + Sync,
    T: Send,
    F: Fn(&P, &dyn Fn() -> bool) -> (SearchOutcome<T>, u64) + Send + Sync,
{
    let best = AtomicUsize::new(usize::MAX);
    let run = || {
        subproblems
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                if best.load(Ordering::Relaxed) < i {
                    return (i, SearchOutcome::Infeasible, 0);
                }
                let cancelled = || best.load(Ordering::Relaxed) < i;
                let (out, nodes) = solve(p, &cancelled);
                if out.is_found() {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                (i, out, nodes)
            })
            .collect::<Vec<_>>()
    };
    let results = match ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    merge(results)
}

fn merge<T>(results: Vec<(usize, SearchOutcome<T>, u64)>) -> (SearchOutcome<T>, u64) {
    let mut indeterminate = false;
    let mut first: Option<(usize, T)> = None;
    let mut nodes = Vec::with_capacity(results.len());
    for (i, out, visited) in results {
        nodes.push(visited);
        match out {
            SearchOutcome::Found(t) if first.as_ref().is_none_or(|(j, _)| i < *j) => {
                first = Some((i, t))
            }
            SearchOutcome::Indeterminate => indeterminate = true,
            _ => {}
        }
    }
    // results arrive in index order
    match first {
        Some((i, t)) => (SearchOutcome::Found(t), nodes[..=i].iter().sum()),
        None if indeterminate => (SearchOutcome::Indeterminate, nodes.iter().sum()),
        None => (SearchOutcome::Infeasible, nodes.iter().sum()),
    }
}
