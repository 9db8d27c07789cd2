//! Undirected simple graphs with totally ordered node ids and bounded-hop
//! neighbourhood queries.
//!
//! Nodes are identified by consecutive integers `0..n`, which double as the
//! tie-breaking total order used by every guard in this crate. Graphs are
//! immutable once built and safe to share across threads; the x-hop
//! neighbourhoods that guards query on every evaluation are memoised lazily.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

/// Index of a node; also its rank in the tie-breaking total order.
pub type NodeId = usize;

/// Largest hop radius that gets a memoised neighbourhood table.
const MAX_CACHED_HOPS: usize = 5;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("node {0} is out of range")]
    InvalidNode(NodeId),
    #[error("requested {requested} edges but a simple graph on {nodes} nodes has at most {max}")]
    TooManyEdges {
        nodes: usize,
        requested: usize,
        max: usize,
    },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: NodeId },
    #[error("line {line}: malformed edge line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: node id {node} exceeds declared node count {declared}")]
    IdBeyondDeclared {
        line: usize,
        node: NodeId,
        declared: usize,
    },
    #[error("graph must declare at least one node")]
    Empty,
}

/// Immutable simple undirected graph.
#[derive(Debug)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    hop_cache: [OnceLock<Vec<Vec<NodeId>>>; MAX_CACHED_HOPS - 1],
}

/// Result of parsing an edge-list file: the graph plus how many duplicate
/// edge lines were collapsed.
#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicate_edges: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes from an edge list. Self-loops are
    /// rejected; duplicate edges are collapsed silently.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = HashSet::new();
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::InvalidNode(u));
            }
            if v >= n {
                return Err(GraphError::InvalidNode(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: 0, node: u });
            }
            let e = (u.min(v), u.max(v));
            if seen.insert(e) {
                canonical.push(e);
            }
        }
        canonical.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canonical {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edges: canonical,
            hop_cache: Default::default(),
        })
    }

    /// Generates a uniform random simple graph with exactly `n` nodes and
    /// `m` edges. Deterministic for a fixed seed.
    pub fn random(n: usize, m: usize, seed: u64) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let max = n * (n - 1) / 2;
        if m > max {
            return Err(GraphError::TooManyEdges {
                nodes: n,
                requested: m,
                max,
            });
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::with_capacity(max);
        for u in 0..n {
            for v in (u + 1)..n {
                pairs.push((u, v));
            }
        }
        let (chosen, _) = pairs.partial_shuffle(&mut rng, m);
        Self::from_edges(n, chosen)
    }

    /// Parses the edge-list text format: optional first line `n=<count>`,
    /// then one `<u> <v>` pair per line; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, GraphError> {
        let mut declared: Option<usize> = None;
        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        let mut seen = HashSet::new();
        let mut duplicates = 0;
        let mut max_id = None::<NodeId>;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("n=") {
                let n: usize = rest.trim().parse().map_err(|_| GraphError::Malformed {
                    line,
                    text: raw.to_string(),
                })?;
                declared = Some(n);
                continue;
            }
            let mut parts = content.split_whitespace();
            let (u, v) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => {
                    let u: NodeId = a.parse().map_err(|_| GraphError::Malformed {
                        line,
                        text: raw.to_string(),
                    })?;
                    let v: NodeId = b.parse().map_err(|_| GraphError::Malformed {
                        line,
                        text: raw.to_string(),
                    })?;
                    (u, v)
                }
                _ => {
                    return Err(GraphError::Malformed {
                        line,
                        text: raw.to_string(),
                    })
                }
            };
            if u == v {
                return Err(GraphError::SelfLoop { line, node: u });
            }
            if let Some(n) = declared {
                let worst = u.max(v);
                if worst >= n {
                    return Err(GraphError::IdBeyondDeclared {
                        line,
                        node: worst,
                        declared: n,
                    });
                }
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
            let e = (u.min(v), u.max(v));
            if seen.insert(e) {
                edges.push(e);
            } else {
                duplicates += 1;
            }
        }
        let n = match (declared, max_id) {
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => return Err(GraphError::Empty),
        };
        Ok(ParsedGraph {
            graph: Self::from_edges(n, &edges)?,
            duplicate_edges: duplicates,
        })
    }

    /// Renders the graph in the edge-list file format accepted by
    /// [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={}", self.node_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.adjacency[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.node_count()
    }

    /// All nodes at hop distance in `[1, x]` from `i`, excluding `i` itself.
    pub fn within_hops(&self, i: NodeId, x: usize) -> Result<Vec<NodeId>, GraphError> {
        if i >= self.node_count() {
            return Err(GraphError::InvalidNode(i));
        }
        if x <= MAX_CACHED_HOPS {
            Ok(self.ball(i, x).to_vec())
        } else {
            Ok(self.bfs_ball(i, x))
        }
    }

    /// Memoised variant of [`Graph::within_hops`] for the radii guards use on
    /// every evaluation. Panics on an out-of-range node or a radius beyond
    /// the cache.
    pub fn ball(&self, i: NodeId, x: usize) -> &[NodeId] {
        match x {
            0 => &[],
            1 => &self.adjacency[i],
            _ => {
                assert!(x <= MAX_CACHED_HOPS, "radius {x} exceeds the hop cache");
                let table = self.hop_cache[x - 2]
                    .get_or_init(|| self.nodes().map(|v| self.bfs_ball(v, x)).collect());
                &table[i]
            }
        }
    }

    fn bfs_ball(&self, start: NodeId, x: usize) -> Vec<NodeId> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[start] = 0;
        let mut frontier = vec![start];
        let mut found = Vec::new();
        for d in 1..=x {
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = d;
                        found.push(v);
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        found.sort_unstable();
        found
    }

    /// Stable 64-bit fingerprint of the node count and edge set.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over (n, sorted canonical edges).
        let mut h: u64 = 0xcbf29ce484222325;
        let mut mix = |value: u64| {
            for byte in value.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        mix(self.node_count() as u64);
        for &(u, v) in &self.edges {
            mix(u as u64);
            mix(v as u64);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g4, two_stars};

    #[test]
    fn within_hops_excludes_self_and_respects_radius() {
        let g = g4();
        assert_eq!(g.within_hops(0, 2).unwrap(), vec![1]);
        assert_eq!(g.within_hops(0, 0).unwrap(), Vec::<NodeId>::new());
        let stars = two_stars();
        assert_eq!(stars.within_hops(0, 3).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn within_hops_one_equals_adjacency() {
        let g = two_stars();
        for i in g.nodes() {
            assert_eq!(g.within_hops(i, 1).unwrap(), g.neighbors(i).to_vec());
        }
    }

    #[test]
    fn within_hops_rejects_bad_node() {
        let g = g4();
        assert!(matches!(g.within_hops(9, 1), Err(GraphError::InvalidNode(9))));
    }

    #[test]
    fn random_graph_edge_budget() {
        let g = Graph::random(1, 0, 7).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);

        // n=4, m=6 forces the complete graph.
        let k4 = Graph::random(4, 6, 0).unwrap();
        assert_eq!(k4.edge_count(), 6);
        for u in 0..4 {
            assert_eq!(k4.degree(u), 3);
        }

        assert!(matches!(
            Graph::random(4, 7, 0),
            Err(GraphError::TooManyEdges { .. })
        ));
    }

    #[test]
    fn random_graph_is_reproducible() {
        let a = Graph::random(30, 60, 42).unwrap();
        let b = Graph::random(30, 60, 42).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = Graph::random(30, 60, 43).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn parse_edge_list_basics() {
        let parsed = Graph::parse_edge_list("0 1\n2 3\n").unwrap();
        assert_eq!(parsed.graph.node_count(), 4);
        assert_eq!(parsed.graph.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(parsed.duplicate_edges, 0);

        let isolated = Graph::parse_edge_list("n=3\n").unwrap();
        assert_eq!(isolated.graph.node_count(), 3);
        assert_eq!(isolated.graph.edge_count(), 0);
    }

    #[test]
    fn parse_edge_list_errors_and_warnings() {
        assert!(matches!(
            Graph::parse_edge_list("0 0\n"),
            Err(GraphError::SelfLoop { line: 1, node: 0 })
        ));
        assert!(matches!(
            Graph::parse_edge_list("0 one\n"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("n=2\n0 5\n"),
            Err(GraphError::IdBeyondDeclared { line: 2, node: 5, .. })
        ));
        let dup = Graph::parse_edge_list("0 1\n1 0\n# comment\n0 1\n").unwrap();
        assert_eq!(dup.duplicate_edges, 2);
        assert_eq!(dup.graph.edge_count(), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::random(12, 20, 5).unwrap();
        let parsed = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(parsed.graph.node_count(), g.node_count());
        assert_eq!(parsed.graph.edges(), g.edges());
    }

    #[test]
    fn disconnected_graphs_are_legal() {
        let g = g4();
        assert_eq!(g.within_hops(0, 4).unwrap(), vec![1]);
        assert_eq!(g.within_hops(2, 4).unwrap(), vec![3]);
    }
}
