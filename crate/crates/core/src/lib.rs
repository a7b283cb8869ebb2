//! Exact search tools for spanning trees with large internal degrees and
//! for star factors, built around a family of connected minimum-degree-`d`
//! graphs in which every spanning tree has an internal vertex of degree 2.

pub mod budget;
pub mod cli;
pub mod constructions;
pub mod count;
pub mod formats;
pub mod graph;
mod parallel;
pub mod star;
pub mod trees;

pub use budget::{SearchBudget, SearchOutcome};
pub use constructions::{build_counterexample, CounterexampleParams, Role, RoleLabels};
pub use count::{spanning_tree_count, BigCount};
pub use graph::{Edge, Graph, GraphError};
