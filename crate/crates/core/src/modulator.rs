//! Vertex covers, cluster vertex deletion sets and cluster decompositions.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default bound on the cover size the exact vertex cover routine will search for.
pub const DEFAULT_EXACT_COVER_CAP: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    /// Minimum cover by a bounded search tree.
    Exact,
    /// Endpoints of a greedy maximal matching; at most twice the minimum.
    Approx2,
}

/// A vertex cover of `graph`, sorted.
///
/// In exact mode the search gives up with [`Error::TooLarge`] once the minimum would exceed
/// `cap` vertices.
pub fn vertex_cover(graph: &Graph, mode: CoverMode, cap: usize) -> Result<Vec<usize>> {
    match mode {
        CoverMode::Approx2 => Ok(approx_cover(graph)),
        CoverMode::Exact => exact_cover(graph, cap),
    }
}

fn approx_cover(graph: &Graph) -> Vec<usize> {
    let mut taken = vec![false; graph.vertex_count()];
    for (u, v) in graph.edges() {
        if !taken[u] && !taken[v] {
            taken[u] = true;
            taken[v] = true;
        }
    }
    (0..graph.vertex_count()).filter(|&v| taken[v]).collect()
}

fn exact_cover(graph: &Graph, cap: usize) -> Result<Vec<usize>> {
    let mut removed = vec![false; graph.vertex_count()];
    let mut chosen = Vec::new();
    for budget in 0..=cap {
        if cover_search(graph, &mut removed, budget, &mut chosen) {
            chosen.sort_unstable();
            return Ok(chosen);
        }
    }
    Err(Error::TooLarge(format!(
        "instance too large for exact cover (minimum exceeds {cap})"
    )))
}

fn live_degree(graph: &Graph, removed: &[bool], v: usize) -> usize {
    graph.neighbors(v).iter().filter(|&&w| !removed[w]).count()
}

fn cover_search(
    graph: &Graph,
    removed: &mut [bool],
    budget: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let mut best = None;
    let mut best_degree = 0;
    let mut live_edges = 0;
    for v in 0..graph.vertex_count() {
        if removed[v] {
            continue;
        }
        let d = live_degree(graph, removed, v);
        live_edges += d;
        if d > best_degree {
            best_degree = d;
            best = Some(v);
        }
    }
    let Some(v) = best else { return true };
    live_edges /= 2;
    if budget == 0 || live_edges > budget * best_degree {
        return false;
    }

    removed[v] = true;
    chosen.push(v);
    if cover_search(graph, removed, budget - 1, chosen) {
        return true;
    }
    chosen.pop();
    removed[v] = false;

    let nbrs: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| !removed[w])
        .collect();
    if nbrs.len() <= budget {
        for &w in &nbrs {
            removed[w] = true;
            chosen.push(w);
        }
        if cover_search(graph, removed, budget - nbrs.len(), chosen) {
            return true;
        }
        for &w in &nbrs {
            removed[w] = false;
            chosen.pop();
        }
    }
    false
}

/// An induced path `u - v - w` (center `v`) among non-removed vertices, if one exists.
fn find_p3(graph: &Graph, removed: &[bool]) -> Option<[usize; 3]> {
    for v in 0..graph.vertex_count() {
        if removed[v] {
            continue;
        }
        let nbrs: Vec<usize> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !removed[w])
            .collect();
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if !graph.has_edge(u, w) {
                    return Some([u, v, w]);
                }
            }
        }
    }
    None
}

fn cvd_search(graph: &Graph, removed: &mut [bool], budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(p3) = find_p3(graph, removed) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for x in p3 {
        removed[x] = true;
        chosen.push(x);
        if cvd_search(graph, removed, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
        removed[x] = false;
    }
    false
}

/// A minimum set `S`, disjoint from `forbidden`, such that `graph - forbidden - S` is a
/// cluster graph. Sorted.
pub fn cvd_modulator(graph: &Graph, forbidden: &[usize]) -> Vec<usize> {
    cvd_modulator_bounded(graph, forbidden, graph.vertex_count())
        .expect("deleting every allowed vertex always leaves a cluster graph")
}

/// Like [`cvd_modulator`], but gives up (returns `None`) when the minimum exceeds `cap`.
pub fn cvd_modulator_bounded(graph: &Graph, forbidden: &[usize], cap: usize) -> Option<Vec<usize>> {
    let mut removed = vec![false; graph.vertex_count()];
    for &v in forbidden {
        removed[v] = true;
    }
    let mut chosen = Vec::new();
    for budget in 0..=cap {
        if cvd_search(graph, &mut removed, budget, &mut chosen) {
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

/// The cliques of `graph - modulator`, each sorted, ordered by smallest member.
pub fn cluster_decomposition(graph: &Graph, modulator: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut alive = vec![true; graph.vertex_count()];
    for &v in modulator {
        alive[v] = false;
    }
    let components = graph.components(&alive);
    if let Some(bad) = components.iter().find(|c| !graph.is_clique(c)) {
        return Err(Error::Precondition(format!(
            "not a cluster graph: the component of vertex {} is not a clique",
            bad[0] + 1
        )));
    }
    Ok(components)
}
