use fixedbitset::FixedBitSet;

use super::catalog::{enumerate_a_paths, PathCatalog, DEFAULT_CATALOG_CAP};
use crate::answer::Answer;
use crate::error::Result;
use crate::instance::{Instance, Packing};

/// Exact answer with the default catalog cap.
pub fn solve_exact(instance: &Instance) -> Result<Answer> {
    solve_exact_with_cap(instance, DEFAULT_CATALOG_CAP)
}

/// Exact answer by branch and bound over the path catalog.
///
/// Vertices are decided one at a time, highest degree first: either some catalogued path
/// whose earliest-decided vertex is this one joins the packing, or the vertex stays unused.
/// A branch is cut when, in every connected component of the still-undecided vertices,
/// terminals and non-terminals cannot supply the missing paths.
pub fn solve_exact_with_cap(instance: &Instance, cap: usize) -> Result<Answer> {
    let k = instance.demand();
    if k == 0 {
        return Ok(Answer::Yes(Packing::default()));
    }
    let n = instance.vertex_count();
    if k * instance.path_order() > n || 2 * k > instance.terminal_count() {
        return Ok(Answer::No);
    }
    let catalog = enumerate_a_paths(instance, cap)?;
    if catalog.len() < k {
        return Ok(Answer::No);
    }

    let graph = instance.graph();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, p) in catalog.paths().iter().enumerate() {
        let first = p
            .vertices()
            .iter()
            .map(|&v| rank[v])
            .min()
            .expect("paths are non-empty");
        buckets[first].push(i);
    }

    let mut search = Search {
        instance,
        catalog: &catalog,
        order,
        buckets,
        used: FixedBitSet::with_capacity(n),
        chosen: Vec::new(),
        scratch: vec![false; n],
    };
    if search.run(0) {
        let paths = search
            .chosen
            .iter()
            .map(|&i| catalog.paths()[i].clone())
            .collect();
        Ok(Answer::Yes(Packing::new(paths)))
    } else {
        Ok(Answer::No)
    }
}

struct Search<'a> {
    instance: &'a Instance,
    catalog: &'a PathCatalog,
    order: Vec<usize>,
    buckets: Vec<Vec<usize>>,
    /// Vertices already on a chosen path or decided to stay unused.
    used: FixedBitSet,
    chosen: Vec<usize>,
    scratch: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, mut r: usize) -> bool {
        let k = self.instance.demand();
        if self.chosen.len() >= k {
            return true;
        }
        let n = self.order.len();
        while r < n && self.used.contains(self.order[r]) {
            r += 1;
        }
        if r == n || self.chosen.len() + self.upper_bound() < k {
            return false;
        }
        let v = self.order[r];
        for b in 0..self.buckets[r].len() {
            let p = self.buckets[r][b];
            let mask = self.catalog.mask(p);
            if !mask.is_disjoint(&self.used) {
                continue;
            }
            self.used.union_with(mask);
            self.chosen.push(p);
            if self.run(r + 1) {
                return true;
            }
            self.chosen.pop();
            self.used.difference_with(mask);
        }
        self.used.insert(v);
        let found = self.run(r + 1);
        self.used.set(v, false);
        found
    }

    /// Paths that could still fit among the undecided vertices, per component.
    fn upper_bound(&mut self) -> usize {
        let graph = self.instance.graph();
        let ell = self.instance.path_order();
        let n = graph.vertex_count();
        for v in 0..n {
            self.scratch[v] = !self.used.contains(v);
        }
        let mut total = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if !self.scratch[start] {
                continue;
            }
            self.scratch[start] = false;
            stack.push(start);
            let (mut terminals, mut others) = (0, 0);
            while let Some(v) = stack.pop() {
                if self.instance.is_terminal(v) {
                    terminals += 1;
                } else {
                    others += 1;
                }
                for &w in graph.neighbors(v) {
                    if self.scratch[w] {
                        self.scratch[w] = false;
                        stack.push(w);
                    }
                }
            }
            total += if ell == 2 {
                terminals / 2
            } else {
                (terminals / 2).min(others / (ell - 2))
            };
        }
        total
    }
}
