//! Search limits shared by the branch-and-bound solvers.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

/// Node and wall-clock limits. `None` means unbounded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    #[serde(serialize_with = "serialize_secs")]
    pub time_limit: Option<Duration>,
}

fn serialize_secs<S: serde::Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_some(&d.as_secs_f64()),
        None => s.serialize_none(),
    }
}

impl SearchBudget {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            node_limit: Some(limit),
            time_limit: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole search space was explored without success.
    Infeasible,
    /// The budget ran out first.
    Indeterminate,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "true",
            SearchOutcome::Infeasible => "false",
            SearchOutcome::Indeterminate => "indeterminate",
        }
    }
}

/// Counts search nodes against a [`SearchBudget`]. Safe to share between
/// workers.
#[derive(Debug)]
pub struct BudgetMeter {
    budget: SearchBudget,
    start: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl BudgetMeter {
    pub fn new(budget: SearchBudget) -> Self {
        BudgetMeter {
            budget,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    pub fn budget(&self) -> SearchBudget {
        self.budget
    }

    /// Charges one node. Returns false once the budget is spent.
    pub fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.budget.node_limit.is_some_and(|limit| used > limit);
        let over_time = used.is_multiple_of(1024)
            && self
                .budget
                .time_limit
                .is_some_and(|limit| self.start.elapsed() > limit);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}
