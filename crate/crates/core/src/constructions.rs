//! Deterministic graph builders: the minimum-degree counterexample family
//! and the small standard families used as test corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("d < 2: got d = {d}")]
    DegreeTooSmall { d: usize },
    #[error("n < d(d+2): got n = {n}, d(d+2) = {min}")]
    TooFewVertices { d: usize, n: usize, min: usize },
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("dm odd: d = {d}, m = {m}")]
    OddDegreeSum { d: usize, m: usize },
    #[error("regular graph needs m > d: got d = {d}, m = {m}")]
    RegularTooSmall { d: usize, m: usize },
    #[error("no simple pairing found after {0} attempts")]
    RetryBudgetExhausted(usize),
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Validated `(d, n)` with `d >= 2` and `n >= d(d+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleParams {
    d: usize,
    n: usize,
}

impl CounterexampleParams {
    pub fn new(d: usize, n: usize) -> Result<Self, ConstructionError> {
        if d < 2 {
            return Err(ConstructionError::DegreeTooSmall { d });
        }
        let min = d * (d + 2);
        if n < min {
            return Err(ConstructionError::TooFewVertices { d, n, min });
        }
        Ok(CounterexampleParams { d, n })
    }

    /// Smallest admissible `n` for this `d`.
    pub fn minimal(d: usize) -> Result<Self, ConstructionError> {
        Self::new(d, d * (d + 2))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of the tail clique: `n - (d-1)(d+1) - d`, at least `d + 1`.
    pub fn tail_size(&self) -> usize {
        self.n - (self.d - 1) * (self.d + 1) - self.d
    }

    /// First vertex of the pendant clique hanging off core vertex `i` (1-based).
    pub fn pendant_start(&self, i: usize) -> usize {
        self.d + (i - 1) * (self.d + 1)
    }

    pub fn tail_start(&self) -> usize {
        self.n - self.tail_size()
    }

    /// `C(d,2) + (d-1) C(d+1,2) + C(w,2) + d`.
    pub fn expected_edge_count(&self) -> usize {
        let pairs = |k: usize| k * k.saturating_sub(1) / 2;
        pairs(self.d) + (self.d - 1) * pairs(self.d + 1) + pairs(self.tail_size()) + self.d
    }
}

/// What a vertex of a counterexample graph is. `index` links a pendant
/// clique to the core vertex it hangs from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role")]
pub enum Role {
    CoreHub,
    Core { index: usize },
    PendantAnchor { index: usize },
    PendantBody { index: usize },
    TailAnchor,
    TailBody,
}

impl Role {
    pub fn name(&self) -> &'static str {
        match self {
            Role::CoreHub => "CoreHub",
            Role::Core { .. } => "Core",
            Role::PendantAnchor { .. } => "PendantAnchor",
            Role::PendantBody { .. } => "PendantBody",
            Role::TailAnchor => "TailAnchor",
            Role::TailBody => "TailBody",
        }
    }

    pub fn is_core(&self) -> bool {
        matches!(self, Role::CoreHub | Role::Core { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("labels cover {labels} vertices but the graph has {graph}")]
    VertexCountMismatch { labels: usize, graph: usize },
    #[error("expected exactly one {0}")]
    RoleCount(&'static str),
    #[error("core vertex {0} has no anchor")]
    MissingAnchor(usize),
    #[error("anchor edge {0} is not in the graph")]
    AnchorEdgeMissing(Edge),
    #[error("core vertices {0} and {1} are not adjacent")]
    CoreNotClique(usize, usize),
}

/// Per-vertex roles of a counterexample graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleLabels {
    roles: Vec<Role>,
}

impl RoleLabels {
    pub fn from_roles(roles: Vec<Role>) -> Self {
        RoleLabels { roles }
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    /// Core vertices in increasing id order (hub included).
    pub fn core_vertices(&self) -> Vec<usize> {
        (0..self.roles.len())
            .filter(|&v| self.roles[v].is_core())
            .collect()
    }

    pub fn hub(&self) -> Option<usize> {
        self.roles.iter().position(|r| *r == Role::CoreHub)
    }

    /// The anchor attached to core vertex `v`.
    pub fn anchor_of(&self, v: usize) -> Option<usize> {
        let target = match self.roles.get(v)? {
            Role::CoreHub => Role::TailAnchor,
            Role::Core { index } => Role::PendantAnchor { index: *index },
            _ => return None,
        };
        self.roles.iter().position(|r| *r == target)
    }

    /// One anchor edge per core vertex, sorted.
    pub fn anchor_edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .core_vertices()
            .into_iter()
            .filter_map(|v| self.anchor_of(v).map(|z| Edge::new(v, z)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Checks that these labels describe `g`'s structure.
    pub fn validate_against(&self, g: &Graph) -> Result<(), LabelError> {
        if self.roles.len() != g.vertex_count() {
            return Err(LabelError::VertexCountMismatch {
                labels: self.roles.len(),
                graph: g.vertex_count(),
            });
        }
        let count = |pred: &dyn Fn(&Role) -> bool| self.roles.iter().filter(|r| pred(r)).count();
        if count(&|r| *r == Role::CoreHub) != 1 {
            return Err(LabelError::RoleCount("CoreHub"));
        }
        if count(&|r| *r == Role::TailAnchor) != 1 {
            return Err(LabelError::RoleCount("TailAnchor"));
        }
        let core = self.core_vertices();
        for (a, &u) in core.iter().enumerate() {
            for &v in &core[a + 1..] {
                if !g.has_edge(u, v) {
                    return Err(LabelError::CoreNotClique(u, v));
                }
            }
            let z = self.anchor_of(u).ok_or(LabelError::MissingAnchor(u))?;
            if !g.has_edge(u, z) {
                return Err(LabelError::AnchorEdgeMissing(Edge::new(u, z)));
            }
        }
        let cores = count(&|r| matches!(r, Role::Core { .. }));
        let anchors = count(&|r| matches!(r, Role::PendantAnchor { .. }));
        if cores != anchors {
            return Err(LabelError::RoleCount("PendantAnchor per Core"));
        }
        Ok(())
    }
}

fn push_clique(edges: &mut Vec<(usize, usize)>, start: usize, size: usize) {
    for u in start..start + size {
        for v in u + 1..start + size {
            edges.push((u, v));
        }
    }
}

/// Builds the counterexample graph. Layout: the core clique on `0..d` with
/// hub 0; the pendant clique for core vertex `i` on the `d+1` ids starting
/// at `d + (i-1)(d+1)`, anchored at its first vertex; the tail clique on the
/// last `w` ids, anchored at its first vertex.
pub fn build_counterexample(p: CounterexampleParams) -> (Graph, RoleLabels) {
    let d = p.d();
    let w = p.tail_size();
    let mut edges = Vec::with_capacity(p.expected_edge_count());
    let mut roles = Vec::with_capacity(p.n());

    push_clique(&mut edges, 0, d);
    roles.push(Role::CoreHub);
    roles.extend((1..d).map(|index| Role::Core { index }));

    for i in 1..d {
        let start = p.pendant_start(i);
        push_clique(&mut edges, start, d + 1);
        edges.push((i, start));
        roles.push(Role::PendantAnchor { index: i });
        roles.extend((1..=d).map(|_| Role::PendantBody { index: i }));
    }

    let tail = p.tail_start();
    push_clique(&mut edges, tail, w);
    edges.push((0, tail));
    roles.push(Role::TailAnchor);
    roles.extend((1..w).map(|_| Role::TailBody));

    let g = Graph::from_edges(p.n(), edges).expect("blocks are disjoint cliques");
    (g, RoleLabels { roles })
}

pub fn build_complete(m: usize) -> Graph {
    let mut edges = Vec::new();
    push_clique(&mut edges, 0, m);
    Graph::from_edges(m, edges).expect("complete graph is simple")
}

pub fn build_path(m: usize) -> Graph {
    Graph::from_edges(m, (1..m).map(|i| (i - 1, i))).expect("path is simple")
}

pub fn build_cycle(m: usize) -> Result<Graph, ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::CycleTooShort(m));
    }
    Ok(Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m))).expect("cycle is simple"))
}

/// `K_{1,leaves}` centered at vertex 0.
pub fn build_star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
}

const REGULAR_ATTEMPTS: usize = 10_000;

/// Configuration model: pair up `d` stubs per vertex uniformly at random and
/// retry the whole pairing until it has no loops or repeated edges.
pub fn build_random_regular(d: usize, m: usize, seed: u64) -> Result<Graph, ConstructionError> {
    if (d * m) % 2 == 1 {
        return Err(ConstructionError::OddDegreeSum { d, m });
    }
    if m <= d {
        return Err(ConstructionError::RegularTooSmall { d, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..m).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..REGULAR_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let pairs = stubs.chunks_exact(2).map(|p| (p[0], p[1]));
        if let Ok(g) = Graph::from_edges(m, pairs) {
            return Ok(g);
        }
    }
    Err(ConstructionError::RetryBudgetExhausted(REGULAR_ATTEMPTS))
}

/// Erdős–Rényi `G(m, p)` with a seeded generator.
pub fn build_random_gnp(m: usize, p: f64, seed: u64) -> Result<Graph, ConstructionError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ConstructionError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(m, edges).expect("G(n,p) is simple"))
}
