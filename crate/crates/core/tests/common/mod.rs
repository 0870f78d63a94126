//! Independent reference implementations used by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use alpp::expansion::ExpansionResult;
use alpp::graph::Graph;
use alpp::instance::Instance;

/// Whether `k` vertex-disjoint (A, l)-paths exist, by plain recursion.
///
/// Takes the smallest terminal not yet decided: it either starts none of the remaining paths
/// (it may still end one, so it is only barred from starting), or it starts a path grown
/// vertex by vertex through free non-terminals up to a free terminal.
pub fn naive_packing_exists(inst: &Instance) -> bool {
    let n = inst.vertex_count();
    let mut used = vec![false; n];
    let mut no_start = vec![false; n];
    naive_rec(inst, inst.demand(), &mut used, &mut no_start)
}

fn naive_rec(inst: &Instance, need: usize, used: &mut Vec<bool>, no_start: &mut Vec<bool>) -> bool {
    if need == 0 {
        return true;
    }
    let Some(t) =
        (0..inst.vertex_count()).find(|&v| inst.is_terminal(v) && !used[v] && !no_start[v])
    else {
        return false;
    };
    no_start[t] = true;
    if naive_rec(inst, need, used, no_start) {
        no_start[t] = false;
        return true;
    }
    no_start[t] = false;
    used[t] = true;
    let mut path = vec![t];
    let found = grow(inst, &mut path, need, used, no_start);
    used[t] = false;
    found
}

fn grow(
    inst: &Instance,
    path: &mut Vec<usize>,
    need: usize,
    used: &mut Vec<bool>,
    no_start: &mut Vec<bool>,
) -> bool {
    let ell = inst.path_order();
    let last = *path.last().unwrap();
    for &v in inst.graph().neighbors(last) {
        if used[v] {
            continue;
        }
        let closing = path.len() + 1 == ell;
        if closing != inst.is_terminal(v) {
            continue;
        }
        used[v] = true;
        path.push(v);
        let ok = if closing {
            naive_rec(inst, need - 1, used, no_start)
        } else {
            grow(inst, path, need, used, no_start)
        };
        path.pop();
        used[v] = false;
        if ok {
            return true;
        }
    }
    false
}

/// Checks the five expansion properties directly from their statements.
pub fn expansion_problems(
    left: usize,
    right: usize,
    edges: &[(usize, usize)],
    q: usize,
    result: &ExpansionResult,
) -> Vec<String> {
    let mut out = Vec::new();
    let lc: BTreeSet<usize> = result.left_core.iter().copied().collect();
    let rc: BTreeSet<usize> = result.right_core.iter().copied().collect();
    let all: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    for &(l, r) in &result.expansion_edges {
        if !all.contains(&(l, r)) {
            out.push(format!("({l},{r}) is not an edge"));
        }
        if !lc.contains(&l) || !rc.contains(&r) {
            out.push(format!("({l},{r}) leaves the cores"));
        }
    }
    for &l in &lc {
        let deg = result.expansion_edges.iter().filter(|e| e.0 == l).count();
        if deg != q {
            out.push(format!("left {l} has {deg} expansion edges"));
        }
    }
    let touched: BTreeSet<usize> = result.expansion_edges.iter().map(|e| e.1).collect();
    if touched.len() != q * lc.len() || result.expansion_edges.len() != q * lc.len() {
        out.push(format!(
            "{} right vertices saturated, want {}",
            touched.len(),
            q * lc.len()
        ));
    }
    for &(l, r) in &all {
        if rc.contains(&r) && !lc.contains(&l) {
            out.push(format!(
                "right core vertex {r} sees {l} outside the left core"
            ));
        }
    }
    if right - rc.len() > q * (left - lc.len()) {
        out.push("too many right vertices outside the core".into());
    }
    out
}

/// Smallest vertex cover by trying subsets in order of size.
pub fn brute_vertex_cover(g: &Graph) -> usize {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0..=n)
        .find(|&size| subsets(n, size).any(|s| edges.iter().all(|&(u, v)| s[u] || s[v])))
        .unwrap()
}

/// Smallest cluster deletion set avoiding `forbidden`, by trying subsets in order of size.
pub fn brute_cvd(g: &Graph, forbidden: &[usize]) -> Option<usize> {
    let n = g.vertex_count();
    (0..=n).find(|&size| {
        subsets(n, size).any(|s| !forbidden.iter().any(|&f| s[f]) && is_cluster_without(g, &s))
    })
}

/// Whether `G` minus the marked vertices has no induced path on three vertices.
pub fn is_cluster_without(g: &Graph, removed: &[bool]) -> bool {
    let n = g.vertex_count();
    for v in 0..n {
        if removed[v] {
            continue;
        }
        let nb: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !removed[u])
            .collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.has_edge(a, b) {
                    return false;
                }
            }
        }
    }
    true
}

/// All `size`-subsets of `0..n` as membership masks.
pub fn subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n)
        .filter(move |m| m.count_ones() as usize == size)
        .map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

/// `C(n, 2)`.
pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
