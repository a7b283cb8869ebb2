//! Mechanical check of the structural argument on a counterexample graph:
//! the anchor edges are forced, the core vertices are internal, the tree
//! restricted to the core is itself a tree, and any leaf of that subtree is
//! an internal vertex of degree exactly 2.

use serde::Serialize;

use super::{RollbackDsu, SpanningTree, TreeError};
use crate::constructions::RoleLabels;
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub forced_bridges_present: bool,
    pub core_vertices_internal: bool,
    pub induced_core_subtree: Vec<Edge>,
    pub induced_core_is_tree: bool,
    /// Lowest-id leaf of the induced core subtree.
    pub witness_leaf: Option<usize>,
    pub witness_degree: Option<usize>,
    pub witness_internal: bool,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.forced_bridges_present
            && self.core_vertices_internal
            && self.induced_core_is_tree
            && self.witness_internal
            && self.witness_degree == Some(2)
    }
}

pub fn certificate_check(
    g: &Graph,
    labels: &RoleLabels,
    t: &SpanningTree,
) -> Result<CertificateReport, TreeError> {
    labels.validate_against(g)?;
    t.validate(g)?;
    let n = g.vertex_count();
    let degree = t.degrees(n);
    let core = labels.core_vertices();
    let in_core = |v: usize| labels.role(v).is_core();

    let forced_bridges_present = labels.anchor_edges().into_iter().all(|e| t.contains(e));
    let core_vertices_internal = core.iter().all(|&v| degree[v] >= 2);

    let induced: Vec<Edge> = t
        .edges()
        .iter()
        .copied()
        .filter(|e| in_core(e.lo()) && in_core(e.hi()))
        .collect();
    // connected and acyclic on the core iff |core| - 1 edges with no cycle
    let mut dsu = RollbackDsu::new(n);
    let acyclic = induced.iter().all(|e| dsu.union(e.lo(), e.hi()));
    let induced_core_is_tree = acyclic && induced.len() + 1 == core.len();

    let mut core_degree = vec![0usize; n];
    for e in &induced {
        core_degree[e.lo()] += 1;
        core_degree[e.hi()] += 1;
    }
    let witness_leaf = core.iter().copied().find(|&v| core_degree[v] == 1);
    let witness_degree = witness_leaf.map(|v| degree[v]);

    Ok(CertificateReport {
        forced_bridges_present,
        core_vertices_internal,
        induced_core_subtree: induced,
        induced_core_is_tree,
        witness_leaf,
        witness_degree,
        witness_internal: witness_degree.is_some_and(|deg| deg >= 2),
    })
}
