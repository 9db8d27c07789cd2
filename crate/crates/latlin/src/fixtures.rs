//! Small graphs shared across unit tests.

use crate::graph::Graph;

/// Four nodes forming two disjoint edges: 0-1 and 2-3.
pub fn g4() -> Graph {
    Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
}

/// Two disjoint stars on eight nodes with centres 1 and 7.
pub fn two_stars() -> Graph {
    Graph::from_edges(8, &[(0, 1), (1, 2), (1, 3), (4, 7), (5, 7), (6, 7)]).unwrap()
}

/// Path on `n` nodes: 0-1-2-...-(n-1).
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Cycle on `n` nodes.
pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges).unwrap()
}

/// Complete graph on `n` nodes.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}
