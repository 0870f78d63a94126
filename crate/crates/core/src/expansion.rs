//! The q-expansion primitive on bipartite graphs.
//!
//! Given `H = (L ⊎ R, E)` and `q ≥ 1`, [`q_expansion`] finds `L̂ ⊆ L`, `R̂ ⊆ R` and an edge set
//! `M` such that every vertex of `L̂` has exactly `q` private partners in `R̂` via `M`,
//! `N(R̂) ⊆ L̂`, and `|R ∖ R̂| ≤ q·|L ∖ L̂|`. In particular `R̂` is non-empty whenever
//! `|R| > q·|L|`, and then some vertex of `R̂` is not covered by `M`.

use crate::error::{Error, Result};

/// Bipartite graph with sides `0..left_count` and `0..right_count`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        BipartiteGraph {
            left_count,
            right_count,
            adjacency: vec![Vec::new(); left_count],
        }
    }

    pub fn from_edges(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut h = BipartiteGraph::new(left_count, right_count);
        for (l, r) in edges {
            h.add_edge(l, r)?;
        }
        Ok(h)
    }

    /// Adds the edge `(l, r)`; repeated edges are ignored.
    pub fn add_edge(&mut self, l: usize, r: usize) -> Result<()> {
        if l >= self.left_count || r >= self.right_count {
            return Err(Error::Precondition(format!(
                "edge ({l}, {r}) outside a {}x{} bipartite graph",
                self.left_count, self.right_count
            )));
        }
        if let Err(pos) = self.adjacency[l].binary_search(&r) {
            self.adjacency[l].insert(pos, r);
        }
        Ok(())
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    /// Right neighbors of left vertex `l`, sorted.
    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adjacency[l]
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adjacency[l].binary_search(&r).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
    }

    /// Left neighbors of every right vertex.
    fn right_adjacency(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.right_count];
        for (l, r) in self.edges() {
            out[r].push(l);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpansionResult {
    /// Sorted.
    pub left_core: Vec<usize>,
    /// Sorted.
    pub right_core: Vec<usize>,
    /// `(left, right)` pairs, sorted.
    pub expansion_edges: Vec<(usize, usize)>,
}

impl ExpansionResult {
    /// Endpoints of the expansion edges, split by side.
    pub fn saturated_vertices(&self) -> (Vec<usize>, Vec<usize>) {
        let mut left: Vec<usize> = self.expansion_edges.iter().map(|&(l, _)| l).collect();
        let mut right: Vec<usize> = self.expansion_edges.iter().map(|&(_, r)| r).collect();
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        (left, right)
    }

    /// Right-core vertices not covered by an expansion edge, sorted.
    pub fn unsaturated_right_core(&self) -> Vec<usize> {
        let (_, saturated) = self.saturated_vertices();
        self.right_core
            .iter()
            .copied()
            .filter(|r| saturated.binary_search(r).is_err())
            .collect()
    }

    /// Every way this result fails to be a q-expansion with the stated core properties.
    pub fn violations(&self, h: &BipartiteGraph, q: usize) -> Vec<String> {
        let mut out = Vec::new();
        let in_left = membership(h.left_count(), &self.left_core);
        let in_right = membership(h.right_count(), &self.right_core);
        let mut left_degree = vec![0usize; h.left_count()];
        let mut right_degree = vec![0usize; h.right_count()];
        for &(l, r) in &self.expansion_edges {
            if l >= h.left_count() || r >= h.right_count() || !h.has_edge(l, r) {
                out.push(format!("({l}, {r}) is not an edge"));
                continue;
            }
            if !in_left[l] || !in_right[r] {
                out.push(format!("expansion edge ({l}, {r}) leaves the cores"));
            }
            left_degree[l] += 1;
            right_degree[r] += 1;
        }
        for &l in &self.left_core {
            if left_degree[l] != q {
                out.push(format!(
                    "left core vertex {l} has {} expansion edges",
                    left_degree[l]
                ));
            }
        }
        let covered = right_degree.iter().filter(|&&d| d > 0).count();
        if covered != q * self.left_core.len() {
            out.push(format!(
                "{covered} right vertices covered, expected {}",
                q * self.left_core.len()
            ));
        }
        for (l, r) in h.edges() {
            if in_right[r] && !in_left[l] {
                out.push(format!(
                    "right core vertex {r} sees {l} outside the left core"
                ));
            }
        }
        let right_rest = h.right_count() - self.right_core.len();
        let left_rest = h.left_count() - self.left_core.len();
        if right_rest > q * left_rest {
            out.push(format!(
                "{right_rest} right vertices outside the core exceed {q}·{left_rest}"
            ));
        }
        out
    }
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut out = vec![false; n];
    for &v in set {
        if v < n {
            out[v] = true;
        }
    }
    out
}

/// Computes a q-expansion and its cores.
///
/// A maximum matching in which every left vertex may take up to `q` partners is grown by
/// augmenting paths (left vertices in increasing order, neighbors in increasing order). The
/// cores are the vertices reachable from unmatched right vertices by alternating paths
/// (right to left along any edge, left to right along matching edges); the expansion edges
/// are the matching edges at the left core.
pub fn q_expansion(h: &BipartiteGraph, q: usize) -> Result<ExpansionResult> {
    if q == 0 {
        return Err(Error::Precondition("q must be at least 1".into()));
    }
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); h.left_count()];
    let mut owner: Vec<Option<usize>> = vec![None; h.right_count()];
    for l in 0..h.left_count() {
        for _ in 0..q {
            let mut seen = vec![false; h.right_count()];
            if !grow(l, h, &mut seen, &mut partners, &mut owner) {
                break;
            }
        }
    }

    let right_adjacency = h.right_adjacency();
    let mut left_seen = vec![false; h.left_count()];
    let mut right_seen = vec![false; h.right_count()];
    let mut stack: Vec<usize> = (0..h.right_count())
        .filter(|&r| owner[r].is_none())
        .collect();
    for &r in &stack {
        right_seen[r] = true;
    }
    while let Some(r) = stack.pop() {
        for &l in &right_adjacency[r] {
            if left_seen[l] {
                continue;
            }
            left_seen[l] = true;
            for &p in &partners[l] {
                if !right_seen[p] {
                    right_seen[p] = true;
                    stack.push(p);
                }
            }
        }
    }

    let left_core: Vec<usize> = (0..h.left_count()).filter(|&l| left_seen[l]).collect();
    let right_core: Vec<usize> = (0..h.right_count()).filter(|&r| right_seen[r]).collect();
    let mut expansion_edges: Vec<(usize, usize)> = left_core
        .iter()
        .flat_map(|&l| partners[l].iter().map(move |&r| (l, r)))
        .collect();
    expansion_edges.sort_unstable();
    let result = ExpansionResult {
        left_core,
        right_core,
        expansion_edges,
    };
    let problems = result.violations(h, q);
    if !problems.is_empty() {
        return Err(Error::Internal(format!(
            "q-expansion check failed: {}",
            problems.join("; ")
        )));
    }
    Ok(result)
}

/// Finds an augmenting path giving `l` one more partner.
fn grow(
    l: usize,
    h: &BipartiteGraph,
    seen: &mut [bool],
    partners: &mut [Vec<usize>],
    owner: &mut [Option<usize>],
) -> bool {
    for &r in h.neighbors(l) {
        if seen[r] || owner[r] == Some(l) {
            continue;
        }
        seen[r] = true;
        let free = match owner[r] {
            None => true,
            Some(other) => reroute(other, r, h, seen, partners, owner),
        };
        if free {
            owner[r] = Some(l);
            partners[l].push(r);
            partners[l].sort_unstable();
            return true;
        }
    }
    false
}

/// Lets `l` give up partner `lost` by taking some other right vertex instead.
fn reroute(
    l: usize,
    lost: usize,
    h: &BipartiteGraph,
    seen: &mut [bool],
    partners: &mut [Vec<usize>],
    owner: &mut [Option<usize>],
) -> bool {
    for &r in h.neighbors(l) {
        if seen[r] || owner[r] == Some(l) {
            continue;
        }
        seen[r] = true;
        let free = match owner[r] {
            None => true,
            Some(other) => reroute(other, r, h, seen, partners, owner),
        };
        if free {
            owner[r] = Some(l);
            let slot = partners[l]
                .iter()
                .position(|&p| p == lost)
                .expect("lost partner present");
            partners[l][slot] = r;
            partners[l].sort_unstable();
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_right_side() {
        let h = BipartiteGraph::new(3, 0);
        assert_eq!(q_expansion(&h, 2).unwrap(), ExpansionResult::default());
        assert_eq!(
            ExpansionResult::default().saturated_vertices(),
            (vec![], vec![])
        );
    }

    #[test]
    fn star_with_three_leaves() {
        let h = BipartiteGraph::from_edges(1, 3, [(0, 0), (0, 1), (0, 2)]).unwrap();
        let result = q_expansion(&h, 2).unwrap();
        assert_eq!(result.left_core, vec![0]);
        assert_eq!(result.right_core, vec![0, 1, 2]);
        assert_eq!(result.expansion_edges, vec![(0, 0), (0, 1)]);
        assert_eq!(result.saturated_vertices(), (vec![0], vec![0, 1]));
        assert_eq!(result.unsaturated_right_core(), vec![2]);
    }

    #[test]
    fn rerouting_needed() {
        // Left 0 first grabs right 0; left 1 can only use right 0, so left 0 must move.
        let h = BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        let result = q_expansion(&h, 1).unwrap();
        assert!(result.violations(&h, 1).is_empty());
        assert!(result.right_core.is_empty());
    }

    #[test]
    fn zero_q_rejected() {
        assert!(q_expansion(&BipartiteGraph::new(1, 1), 0).is_err());
    }
}
