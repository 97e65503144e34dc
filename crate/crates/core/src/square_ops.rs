//! Graph squares and distance-2 neighborhoods.

use std::collections::VecDeque;

use thiserror::Error;

use crate::plane_graph::{PlaneGraph, VertexId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// Non-embedded simple graph with sorted per-vertex neighbor lists.  The
/// codomain of squaring and the domain of clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Build from an edge list; duplicates are collapsed.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            assert!(u < n && v < n, "edge ({u},{v}) out of range");
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
            row.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn from_plane(g: &PlaneGraph) -> Self {
        let mut adj: Vec<Vec<VertexId>> = (0..g.vertex_count())
            .map(|v| g.neighbors(v).to_vec())
            .collect();
        for row in adj.iter_mut() {
            row.sort_unstable();
        }
        SimpleGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, nbrs) in self.adj.iter().enumerate() {
            for &u in nbrs {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        n < 2 || self.edge_count() == n * (n - 1) / 2
    }

    /// The square: an edge uv for every pair at distance 1 or 2.
    pub fn square(&self) -> SimpleGraph {
        let n = self.adj.len();
        let mut adj = vec![Vec::new(); n];
        let mut mark = vec![false; n];
        for v in 0..n {
            let mut touched = Vec::new();
            mark[v] = true;
            touched.push(v);
            for &u in &self.adj[v] {
                if !mark[u] {
                    mark[u] = true;
                    touched.push(u);
                }
                for &w in &self.adj[u] {
                    if !mark[w] {
                        mark[w] = true;
                        touched.push(w);
                    }
                }
            }
            let mut row: Vec<VertexId> = touched.iter().copied().filter(|&u| u != v).collect();
            row.sort_unstable();
            adj[v] = row;
            for t in touched {
                mark[t] = false;
            }
        }
        SimpleGraph { adj }
    }

    /// Per-vertex neighbor bitsets, for O(1) adjacency tests in dense work.
    pub fn bit_rows(&self) -> Vec<Vec<u64>> {
        let n = self.adj.len();
        let words = n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; n];
        for (v, nbrs) in self.adj.iter().enumerate() {
            for &u in nbrs {
                rows[v][u / 64] |= 1 << (u % 64);
            }
        }
        rows
    }

    pub fn bfs_distances(&self, src: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Largest distance between any two vertices; None when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.adj.len();
        let mut best = 0;
        for v in 0..n {
            for d in self.bfs_distances(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }
}

/// Square of a plane graph.
pub fn square_of_plane(g: &PlaneGraph) -> SimpleGraph {
    SimpleGraph::from_plane(g).square()
}

/// {v} together with everything at distance at most 2 from v, ascending.
/// Equals the closed neighborhood of v in square(G).
pub fn dist2_closed_neighborhood(g: &SimpleGraph, v: VertexId) -> Vec<VertexId> {
    let mut out = vec![v];
    out.extend_from_slice(g.neighbors(v));
    for &u in g.neighbors(v) {
        out.extend_from_slice(g.neighbors(u));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Edge-list text format: "n m" header, then one "u v" line per edge with
/// u < v.  Comments start with '#'.
pub fn serialize_edge_list(g: &SimpleGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<SimpleGraph, EdgeListError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tok = content.split_whitespace();
        let syntax = |msg: &str| EdgeListError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let a: usize = tok
            .next()
            .ok_or_else(|| syntax("missing token"))?
            .parse()
            .map_err(|_| syntax("expected integer"))?;
        let b: usize = tok
            .next()
            .ok_or_else(|| syntax("expected two integers"))?
            .parse()
            .map_err(|_| syntax("expected integer"))?;
        if tok.next().is_some() {
            return Err(syntax("trailing tokens"));
        }
        match header {
            None => header = Some((a, b)),
            Some((n, _)) => {
                if a >= n || b >= n {
                    return Err(syntax("endpoint out of range"));
                }
                if a == b {
                    return Err(syntax("self-loop"));
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or(EdgeListError::Syntax {
        line: 0,
        msg: "empty input".to_string(),
    })?;
    if edges.len() != m {
        return Err(EdgeListError::Syntax {
            line: 0,
            msg: format!("header claims {m} edges, found {}", edges.len()),
        });
    }
    Ok(SimpleGraph::from_edges(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn square_of_path3_is_triangle() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let sq = g.square();
        assert_eq!(sq.edge_count(), 3);
        assert!(sq.is_complete());
    }

    #[test]
    fn square_of_c6_is_4_regular() {
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let sq = g.square();
        assert!((0..6).all(|v| sq.degree(v) == 4));
    }

    #[test]
    fn star_center_reaches_everything() {
        let g = fixtures::star(8);
        let sq = SimpleGraph::from_plane(&g).square();
        assert_eq!(
            dist2_closed_neighborhood(&SimpleGraph::from_plane(&g), 0).len(),
            9
        );
        assert!(sq.is_complete());
    }

    #[test]
    fn path_leaf_neighborhood() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(dist2_closed_neighborhood(&g, 0), vec![0, 1, 2]);
    }

    #[test]
    fn dist2_matches_square_neighborhood() {
        let g = SimpleGraph::from_plane(&fixtures::octahedron());
        let sq = g.square();
        for v in 0..g.vertex_count() {
            let mut expect = vec![v];
            expect.extend_from_slice(sq.neighbors(v));
            expect.sort_unstable();
            assert_eq!(dist2_closed_neighborhood(&g, v), expect);
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 4), (2, 3)]);
        let text = serialize_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert!(parse_edge_list("3 1\n0 0\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
    }
}
