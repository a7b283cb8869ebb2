//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("empty graph")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("parallel edge {0}")]
    ParallelEdge(Edge),
}

/// An undirected edge stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    /// Canonicalizes the endpoint order. Panics on `u == v`; use
    /// [`Edge::try_new`] for untrusted input.
    pub fn new(u: usize, v: usize) -> Self {
        Self::try_new(u, v).expect("edge endpoints must be distinct")
    }

    pub fn try_new(u: usize, v: usize) -> Result<Self, GraphError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: v, hi: u }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(u)),
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.lo, e.hi]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = GraphError;

    fn try_from(pair: [usize; 2]) -> Result<Self, Self::Error> {
        Edge::try_new(pair[0], pair[1])
    }
}

/// Immutable simple undirected graph. Neighbor lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, parallel edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            let e = Edge::try_new(u, v)?;
            if e.hi >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: e.hi,
                    vertex_count: n,
                });
            }
            if !seen.insert(e) {
                return Err(GraphError::ParallelEdge(e));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edge_count: seen.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo, e.hi)
    }

    /// All edges in canonical `(min, max)` lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list.iter().filter(|&&v| v > u) {
                out.push(Edge { lo: u, hi: v });
            }
        }
        out
    }

    pub fn min_degree(&self) -> Result<usize, GraphError> {
        self.adjacency
            .iter()
            .map(Vec::len)
            .min()
            .ok_or(GraphError::Empty)
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        self.adjacency
            .iter()
            .map(Vec::len)
            .max()
            .ok_or(GraphError::Empty)
    }

    /// True iff every vertex is reachable from vertex 0. The empty graph
    /// counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Cut edges, found with an iterative low-link DFS.
    pub fn find_bridges(&self) -> BTreeSet<Edge> {
        const UNSEEN: usize = usize::MAX;
        let n = self.vertex_count();
        let mut order = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut bridges = BTreeSet::new();
        let mut timer = 0;

        for root in 0..n {
            if order[root] != UNSEEN {
                continue;
            }
            order[root] = timer;
            low[root] = timer;
            timer += 1;
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, UNSEEN, 0usize)];
            while let Some(frame) = stack.last_mut() {
                let (u, parent, idx) = *frame;
                if idx < self.adjacency[u].len() {
                    frame.2 += 1;
                    let v = self.adjacency[u][idx];
                    if v == parent {
                        // simple graph: exactly one edge back to the parent
                        continue;
                    }
                    if order[v] == UNSEEN {
                        order[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        stack.push((v, u, 0));
                    } else {
                        low[u] = low[u].min(order[v]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] > order[parent] {
                            bridges.insert(Edge::new(parent, u));
                        }
                    }
                }
            }
        }
        bridges
    }

    /// A copy of this graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut edges: Vec<(usize, usize)> = self.edges().iter().map(Edge::endpoints).collect();
        edges.push((u, v));
        Graph::from_edges(self.vertex_count(), edges)
    }

    /// A copy of this graph with `e` removed (no-op if absent).
    pub fn without_edge(&self, e: Edge) -> Graph {
        let edges = self
            .edges()
            .into_iter()
            .filter(|&f| f != e)
            .map(|f| f.endpoints());
        Graph::from_edges(self.vertex_count(), edges).expect("subgraph of a simple graph is simple")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    fn brute_force_bridges(g: &Graph) -> BTreeSet<Edge> {
        let base = g.components().len();
        g.edges()
            .into_iter()
            .filter(|&e| g.without_edge(e).components().len() > base)
            .collect()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(Edge::new(0, 1)))
        );
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (1, 0), (4, 3)]).unwrap();
        for u in 0..5 {
            assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
            for &v in g.neighbors(u) {
                assert!(g.has_edge(v, u));
                assert_ne!(u, v);
            }
        }
        assert_eq!(
            g.edges(),
            vec![
                Edge::new(0, 1),
                Edge::new(0, 4),
                Edge::new(1, 3),
                Edge::new(3, 4)
            ]
        );
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(complete(4).min_degree(), Ok(3));
        assert_eq!(path(5).min_degree(), Ok(1));
        assert_eq!(Graph::empty(0).min_degree(), Err(GraphError::Empty));
        assert_eq!(GraphError::Empty.to_string(), "empty graph");
    }

    #[test]
    fn connectivity_examples() {
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::from_edges(4, [(0, 1), (2, 3)])
            .unwrap()
            .is_connected());
        assert!(path(6).is_connected());
    }

    #[test]
    fn bridges_of_small_graphs() {
        assert!(complete(4).find_bridges().is_empty());
        let p = path(6);
        assert_eq!(p.find_bridges(), p.edges().into_iter().collect());
        // two triangles joined by an edge
        let g =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(g.find_bridges(), BTreeSet::from([Edge::new(2, 3)]));
    }

    #[test]
    fn bridges_match_brute_force_on_disconnected_input() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (4, 5)]).unwrap();
        assert_eq!(g.find_bridges(), brute_force_bridges(&g));
    }

    #[test]
    fn edge_serializes_as_pair() {
        let e = Edge::new(5, 2);
        assert_eq!(serde_json::to_string(&e).unwrap(), "[2,5]");
        let back: Edge = serde_json::from_str("[5,2]").unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<Edge>("[3,3]").is_err());
    }
}
