//! Simple undirected graphs over dense vertex ids.

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Neighbor lists are kept sorted, so adjacency queries are a binary search and
/// iteration order is always increasing vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut graph = Graph::new(n);
        for (u, v) in edges {
            graph.add_edge(u, v)?;
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Inserts the edge `uv`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::InvalidInstance(format!(
                "edge ({}, {}) has an endpoint outside 1..={n}",
                u + 1,
                v + 1
            )));
        }
        if u == v {
            return Err(Error::InvalidInstance(format!(
                "self-loop at vertex {}",
                u + 1
            )));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidInstance(format!(
                "duplicate edge ({}, {})",
                u + 1,
                v + 1
            ))),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    /// Inserts `uv` unless it is already present. Returns whether the edge was new.
    pub fn ensure_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u < self.vertex_count() && v < self.vertex_count() && self.has_edge(u, v) {
            return Ok(false);
        }
        self.add_edge(u, v).map(|_| true)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The subgraph induced by the vertices with `keep[v] == true`.
    ///
    /// Returns the new graph together with the map from new ids to old ids.
    /// Surviving vertices keep their relative order.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let origin: Vec<usize> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in origin.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adjacency = vec![Vec::new(); origin.len()];
        let mut edge_count = 0;
        for (i, &v) in origin.iter().enumerate() {
            adjacency[i] = self.adjacency[v]
                .iter()
                .filter(|&&w| keep[w])
                .map(|&w| new_id[w])
                .collect();
            edge_count += adjacency[i].len();
        }
        (
            Graph {
                adjacency,
                edge_count: edge_count / 2,
            },
            origin,
        )
    }

    /// Connected components of the subgraph induced by `alive`, each sorted, ordered by
    /// smallest member.
    pub fn components(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if !alive[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the listed vertices are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Whether the graph is a simple path (connected, acyclic, max degree two). The empty
    /// graph is not a path.
    pub fn is_path_graph(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || self.edge_count + 1 != n {
            return false;
        }
        if self.adjacency.iter().any(|nbrs| nbrs.len() > 2) {
            return false;
        }
        self.components(&vec![true; n]).len() == 1
    }
}
