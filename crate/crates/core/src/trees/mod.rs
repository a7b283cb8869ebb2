//! Spanning trees: enumeration, degree profiles, the internal-degree
//! decision and optimization solvers, and the structural certificate for
//! the counterexample family.

mod certificate;
mod decide;
mod dsu;
mod enumerate;
mod greedy;
mod sample;
mod state;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::constructions::LabelError;
use crate::graph::{Edge, Graph};

pub use certificate::{certificate_check, CertificateReport};
pub use decide::{
    exists_tree_all_internal_at_least, exists_tree_all_internal_at_least_parallel,
    max_min_internal_degree, max_min_internal_degree_parallel, MmidResult,
};
pub use dsu::RollbackDsu;
pub use enumerate::{
    enumerate_spanning_trees, enumerate_spanning_trees_parallel, EnumerationStats,
};
pub use greedy::{max_leaf_greedy, GreedyTree};
pub use sample::random_spanning_tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("not connected")]
    Disconnected,
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),
    #[error("spanning tree needs {expected} edges, got {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("edge {0} closes a cycle")]
    Cycle(Edge),
    #[error("internal degree threshold must be at least 2, got {0}")]
    ThresholdTooSmall(usize),
    #[error("labels do not match the graph: {0}")]
    Labels(#[from] LabelError),
}

/// The `n - 1` edges of a spanning tree, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SpanningTree {
    edges: Vec<Edge>,
}

impl SpanningTree {
    /// Validates `edges` as a spanning tree of `g`.
    pub fn new(g: &Graph, mut edges: Vec<Edge>) -> Result<Self, TreeError> {
        edges.sort_unstable();
        let t = SpanningTree { edges };
        t.validate(g)?;
        Ok(t)
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        SpanningTree { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Checks edge membership, edge count and acyclicity against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), TreeError> {
        let n = g.vertex_count();
        let expected = n.saturating_sub(1);
        if let Some(&e) = self.edges.iter().find(|&&e| !g.contains_edge(e)) {
            return Err(TreeError::EdgeNotInGraph(e));
        }
        if self.edges.len() != expected {
            return Err(TreeError::WrongEdgeCount {
                expected,
                found: self.edges.len(),
            });
        }
        let mut dsu = RollbackDsu::new(n);
        for &e in &self.edges {
            if !dsu.union(e.lo(), e.hi()) {
                return Err(TreeError::Cycle(e));
            }
        }
        Ok(())
    }

    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for e in &self.edges {
            deg[e.lo()] += 1;
            deg[e.hi()] += 1;
        }
        deg
    }
}

/// Minimum internal degree of a tree. Trees on at most two vertices have no
/// internal vertex; that case orders above every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MinInternal {
    Degree(usize),
    NoInternal,
}

impl MinInternal {
    pub fn degree(&self) -> Option<usize> {
        match self {
            MinInternal::Degree(k) => Some(*k),
            MinInternal::NoInternal => None,
        }
    }
}

impl fmt::Display for MinInternal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinInternal::Degree(k) => write!(f, "{k}"),
            MinInternal::NoInternal => f.write_str("no-internal"),
        }
    }
}

impl Serialize for MinInternal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MinInternal::Degree(k) => s.serialize_u64(*k as u64),
            MinInternal::NoInternal => s.serialize_str("no-internal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeProfile {
    pub tree_degree: Vec<usize>,
    pub leaves: Vec<usize>,
    pub internals: Vec<usize>,
    pub min_internal_degree: MinInternal,
}

impl TreeProfile {
    pub fn has_internal_of_degree(&self, k: usize) -> bool {
        self.internals.iter().any(|&v| self.tree_degree[v] == k)
    }
}

/// Degree tally of `t`, after validating it against `g`.
pub fn tree_profile(g: &Graph, t: &SpanningTree) -> Result<TreeProfile, TreeError> {
    t.validate(g)?;
    Ok(profile_unchecked(g.vertex_count(), t))
}

pub(crate) fn profile_unchecked(n: usize, t: &SpanningTree) -> TreeProfile {
    let tree_degree = t.degrees(n);
    let leaves = (0..n).filter(|&v| tree_degree[v] == 1).collect();
    let internals: Vec<usize> = (0..n).filter(|&v| tree_degree[v] >= 2).collect();
    let min_internal_degree = internals
        .iter()
        .map(|&v| tree_degree[v])
        .min()
        .map_or(MinInternal::NoInternal, MinInternal::Degree);
    TreeProfile {
        tree_degree,
        leaves,
        internals,
        min_internal_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_complete, build_path, build_star};

    fn tree_of(g: &Graph) -> SpanningTree {
        SpanningTree::new(g, g.edges()).unwrap()
    }

    #[test]
    fn profiles_of_unique_trees() {
        let star = build_star(3);
        let p = tree_profile(&star, &tree_of(&star)).unwrap();
        assert_eq!(p.min_internal_degree, MinInternal::Degree(3));
        assert_eq!(p.leaves, vec![1, 2, 3]);

        let p5 = build_path(5);
        let p = tree_profile(&p5, &tree_of(&p5)).unwrap();
        assert_eq!(p.min_internal_degree, MinInternal::Degree(2));
        assert_eq!(p.internals, vec![1, 2, 3]);
        assert_eq!(p.tree_degree.iter().sum::<usize>(), 8);

        let p2 = build_path(2);
        let p = tree_profile(&p2, &tree_of(&p2)).unwrap();
        assert_eq!(p.min_internal_degree, MinInternal::NoInternal);
        assert!(p.internals.is_empty());
    }

    #[test]
    fn no_internal_orders_above_degrees() {
        assert!(MinInternal::NoInternal > MinInternal::Degree(usize::MAX));
        assert!(MinInternal::Degree(3) > MinInternal::Degree(2));
        assert_eq!(serde_json::to_string(&MinInternal::Degree(2)).unwrap(), "2");
        assert_eq!(
            serde_json::to_string(&MinInternal::NoInternal).unwrap(),
            "\"no-internal\""
        );
    }

    #[test]
    fn validation_errors() {
        let k4 = build_complete(4);
        assert_eq!(
            SpanningTree::new(&k4, vec![Edge::new(0, 1), Edge::new(1, 2)]),
            Err(TreeError::WrongEdgeCount {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            SpanningTree::new(&k4, vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)]),
            Err(TreeError::Cycle(Edge::new(1, 2)))
        );
        let p4 = build_path(4);
        assert_eq!(
            SpanningTree::new(&p4, vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 3)]),
            Err(TreeError::EdgeNotInGraph(Edge::new(0, 3)))
        );
        let t = tree_of(&build_star(3));
        assert_eq!(
            tree_profile(&p4, &t),
            Err(TreeError::EdgeNotInGraph(Edge::new(0, 2)))
        );
    }
}
