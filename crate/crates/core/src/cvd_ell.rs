//! Solving by cluster vertex deletion set plus path order: mark a bounded number of vertices
//! per clique, delete what the marks make redundant, and solve the small residue exactly.
//!
//! With `m = |M|` and `t = l·m + 1`, each clique keeps at most `f1 = (m+1)·t` marked
//! terminals and `f2 = (m²+m+1)·t` marked non-terminals. Four rules then apply, in order,
//! each time to the lowest-index clique that qualifies:
//!
//! * a clique with two unmarked terminals and `l - 2` unmarked non-terminals gives away one
//!   whole path (demand drops by one);
//! * a clique with at most one unmarked terminal loses an unmarked non-terminal once it has
//!   more than `⌈(f1+1)·l/2⌉` of them;
//! * a clique with at most `l - 3` unmarked non-terminals loses an unmarked terminal once it
//!   has more than `⌈(f2+l-3)/(l-2)⌉` of them;
//! * a class of at least `t` equivalent cliques loses one clique `Q`, and the demand drops by
//!   the number of disjoint paths that fit inside `Q`.
//!
//! Marks are recomputed from scratch after every deletion.

use std::collections::{BTreeMap, HashMap};

use crate::answer::Answer;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, Modulator, ModulatorKind, Packing, Path};
use crate::modulator::{cluster_decomposition, cvd_modulator};
use crate::oracle::solve_exact_with_cap;
use crate::trace::{RuleId, Trace, TraceEvent};

/// Which marking step first claimed a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkStep {
    /// Neighbor of a single modulator vertex.
    Neighbor,
    /// Common non-terminal neighbor of two modulator vertices.
    CommonNeighbor,
    /// Unconditional reserve.
    Reserve,
}

/// Marks of one clique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliqueMarks {
    /// Sorted.
    pub marked_in_a: Vec<usize>,
    /// Sorted.
    pub marked_out_a: Vec<usize>,
    pub provenance: BTreeMap<usize, MarkStep>,
}

/// Marks for every clique, in clique order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MarkTable {
    pub cliques: Vec<CliqueMarks>,
}

impl MarkTable {
    pub fn is_marked(&self, clique: usize, v: usize) -> bool {
        self.cliques[clique].provenance.contains_key(&v)
    }
}

/// Per-clique quota `l·m + 1`.
pub fn mark_quota(ell: usize, m: usize) -> usize {
    ell * m + 1
}

/// Bound on marked terminals per clique, `(m+1)(l·m+1)`.
pub fn f1(ell: usize, m: usize) -> usize {
    (m + 1) * mark_quota(ell, m)
}

/// Bound on marked non-terminals per clique, `(m²+m+1)(l·m+1)`.
pub fn f2(ell: usize, m: usize) -> usize {
    (m * m + m + 1) * mark_quota(ell, m)
}

/// Unmarked non-terminals at which a clique with at most one unmarked terminal is trimmed:
/// `⌈(f1+1)·l/2⌉ + 1`.
pub fn nonterminal_threshold(ell: usize, m: usize) -> usize {
    ((f1(ell, m) + 1) * ell).div_ceil(2) + 1
}

/// Unmarked terminals at which a clique with at most `l-3` unmarked non-terminals is
/// trimmed: `⌈(f2+l-3)/(l-2)⌉ + 1`. `None` for `l = 2`, where the rule never applies.
pub fn terminal_threshold(ell: usize, m: usize) -> Option<usize> {
    (ell >= 3).then(|| (f2(ell, m) + ell - 3).div_ceil(ell - 2) + 1)
}

/// Runs the three marking steps on every clique, lowest vertex ids first.
pub fn mark_vertices(
    instance: &Instance,
    modulator: &[usize],
    cliques: &[Vec<usize>],
) -> MarkTable {
    let graph = instance.graph();
    let quota = mark_quota(instance.path_order(), modulator.len());
    let mut table = MarkTable::default();
    for clique in cliques {
        let terminals: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&v| instance.is_terminal(v))
            .collect();
        let others: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&v| !instance.is_terminal(v))
            .collect();
        let mut marks = CliqueMarks::default();
        let mut claim = |vs: &mut dyn Iterator<Item = usize>, step: MarkStep| {
            for v in vs.take(quota) {
                marks.provenance.entry(v).or_insert(step);
            }
        };
        for &u in modulator {
            claim(
                &mut terminals.iter().copied().filter(|&v| graph.has_edge(u, v)),
                MarkStep::Neighbor,
            );
            claim(
                &mut others.iter().copied().filter(|&v| graph.has_edge(u, v)),
                MarkStep::Neighbor,
            );
        }
        for (i, &u) in modulator.iter().enumerate() {
            for &w in &modulator[i + 1..] {
                claim(
                    &mut others
                        .iter()
                        .copied()
                        .filter(|&v| graph.has_edge(u, v) && graph.has_edge(w, v)),
                    MarkStep::CommonNeighbor,
                );
            }
        }
        claim(&mut terminals.iter().copied(), MarkStep::Reserve);
        claim(&mut others.iter().copied(), MarkStep::Reserve);
        for &v in marks.provenance.keys() {
            if instance.is_terminal(v) {
                marks.marked_in_a.push(v);
            } else {
                marks.marked_out_a.push(v);
            }
        }
        table.cliques.push(marks);
    }
    table
}

/// How many vertices of a clique have each (modulator neighborhood, terminal flag) type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CliqueProfile {
    pub counts: BTreeMap<(Vec<usize>, bool), usize>,
}

impl CliqueProfile {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Profile of `clique`; two cliques are equivalent exactly when their profiles are equal.
pub fn clique_profile(
    clique: &[usize],
    graph: &Graph,
    modulator: &[usize],
    terminal: &[bool],
) -> CliqueProfile {
    let mut profile = CliqueProfile::default();
    for &v in clique {
        let nbrs: Vec<usize> = modulator
            .iter()
            .copied()
            .filter(|&u| graph.has_edge(u, v))
            .collect();
        *profile.counts.entry((nbrs, terminal[v])).or_insert(0) += 1;
    }
    profile
}

/// Swaps `a2` (on `p1`) with `b2` (on `p2`). Both results must again be paths of `graph`.
pub fn exchange(graph: &Graph, p1: &Path, p2: &Path, a2: usize, b2: usize) -> Result<(Path, Path)> {
    let swap = |p: &Path, from: usize, to: usize| -> Result<Path> {
        let pos = p
            .vertices()
            .iter()
            .position(|&v| v == from)
            .ok_or_else(|| Error::Precondition(format!("vertex {from} is not on the path")))?;
        let mut vs = p.vertices().to_vec();
        vs[pos] = to;
        for nb in [pos.checked_sub(1), Some(pos + 1)].into_iter().flatten() {
            if nb < vs.len() && !graph.has_edge(vs[nb], to) {
                return Err(Error::Precondition(format!(
                    "vertex {to} is not adjacent to {} after the swap",
                    vs[nb]
                )));
            }
        }
        if vs.iter().filter(|&&v| v == to).count() > 1 {
            return Err(Error::Precondition(format!("vertex {to} would repeat")));
        }
        Ok(Path::new(vs))
    };
    Ok((swap(p1, a2, b2)?, swap(p2, b2, a2)?))
}

/// Reduction state; [`CvdEllReducer::step`] applies one rule at a time.
#[derive(Debug, Clone)]
pub struct CvdEllReducer {
    instance: Instance,
    origin: Vec<usize>,
    trace: Trace,
}

impl CvdEllReducer {
    /// Starts from `instance`, using its declared cluster modulator or computing a minimum one.
    pub fn new(instance: &Instance) -> Result<Self> {
        let instance = match instance.modulator() {
            Some(m) if m.kind != ModulatorKind::VertexCover => instance
                .with_modulator(Some(Modulator::new(ModulatorKind::Cvd, m.vertices.clone())))?,
            _ => {
                let s = cvd_modulator(instance.graph(), &[]);
                instance.with_modulator(Some(Modulator::new(ModulatorKind::Cvd, s)))?
            }
        };
        Ok(CvdEllReducer {
            origin: (0..instance.vertex_count()).collect(),
            instance,
            trace: Trace::new(),
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn modulator(&self) -> &[usize] {
        &self
            .instance
            .modulator()
            .expect("reducer always carries its modulator")
            .vertices
    }

    pub fn cliques(&self) -> Vec<Vec<usize>> {
        cluster_decomposition(self.instance.graph(), self.modulator())
            .expect("deletions keep the cluster property")
    }

    pub fn marks(&self) -> MarkTable {
        mark_vertices(&self.instance, self.modulator(), &self.cliques())
    }

    fn unmarked(&self, clique: &[usize], marks: &CliqueMarks) -> (Vec<usize>, Vec<usize>) {
        let free = clique
            .iter()
            .copied()
            .filter(|v| !marks.provenance.contains_key(v));
        free.partition(|&v| self.instance.is_terminal(v))
    }

    fn apply(
        &mut self,
        rule: RuleId,
        deleted: Vec<usize>,
        demand_drop: usize,
        extracted: Vec<Path>,
    ) {
        let mut keep = vec![true; self.instance.vertex_count()];
        for &v in &deleted {
            keep[v] = false;
        }
        let demand = self.instance.demand() - demand_drop;
        self.trace.push(TraceEvent::Applied {
            rule,
            deleted: deleted.iter().map(|&v| self.origin[v]).collect(),
            demand_drop,
            extracted: extracted.iter().map(|p| p.relabel(&self.origin)).collect(),
        });
        let (reduced, origin) = self.instance.induced(&keep, demand);
        self.origin = origin.iter().map(|&v| self.origin[v]).collect();
        self.instance = reduced;
    }

    /// Applies the first applicable rule. Returns it, or `None` at the fixpoint (or once the
    /// demand has reached zero).
    pub fn step(&mut self) -> Option<RuleId> {
        if self.instance.demand() == 0 {
            return None;
        }
        let ell = self.instance.path_order();
        let m = self.modulator().len();
        let cliques = self.cliques();
        let marks = mark_vertices(&self.instance, self.modulator(), &cliques);
        let unmarked: Vec<(Vec<usize>, Vec<usize>)> = cliques
            .iter()
            .zip(&marks.cliques)
            .map(|(q, mk)| self.unmarked(q, mk))
            .collect();

        if let Some((a, b)) = unmarked
            .iter()
            .find(|(a, b)| a.len() >= 2 && b.len() >= ell - 2)
        {
            let mut path = vec![a[0]];
            path.extend_from_slice(&b[..ell - 2]);
            path.push(a[1]);
            let deleted = path.clone();
            self.apply(RuleId::CvdPath, deleted, 1, vec![Path::new(path)]);
            return Some(RuleId::CvdPath);
        }
        let non_a = nonterminal_threshold(ell, m);
        if let Some((_, b)) = unmarked
            .iter()
            .find(|(a, b)| a.len() <= 1 && b.len() >= non_a)
        {
            self.apply(RuleId::CvdNonTerminal, vec![b[0]], 0, Vec::new());
            return Some(RuleId::CvdNonTerminal);
        }
        if let Some(thr) = terminal_threshold(ell, m) {
            if let Some((a, _)) = unmarked
                .iter()
                .find(|(a, b)| b.len() + 3 <= ell && a.len() >= thr)
            {
                self.apply(RuleId::CvdTerminal, vec![a[0]], 0, Vec::new());
                return Some(RuleId::CvdTerminal);
            }
        }
        if let Some(clique) = self.oversized_class(&cliques) {
            let (terminals, others): (Vec<usize>, Vec<usize>) =
                clique.iter().partition(|&&v| self.instance.is_terminal(v));
            let fit = paths_inside(terminals.len(), others.len(), ell);
            let drop = fit.min(self.instance.demand());
            let extracted = (0..drop)
                .map(|i| {
                    let mut vs = vec![terminals[2 * i]];
                    vs.extend_from_slice(&others[i * (ell - 2)..(i + 1) * (ell - 2)]);
                    vs.push(terminals[2 * i + 1]);
                    Path::new(vs)
                })
                .collect();
            self.apply(RuleId::CvdClass, clique, drop, extracted);
            return Some(RuleId::CvdClass);
        }
        None
    }

    /// Lowest-index clique of the first class (ordered by lowest clique index) with at least
    /// `l·m + 1` members.
    fn oversized_class(&self, cliques: &[Vec<usize>]) -> Option<Vec<usize>> {
        let quota = mark_quota(self.instance.path_order(), self.modulator().len());
        let mut classes: HashMap<CliqueProfile, Vec<usize>> = HashMap::new();
        for (i, q) in cliques.iter().enumerate() {
            let profile = clique_profile(
                q,
                self.instance.graph(),
                self.modulator(),
                self.instance.terminal_mask(),
            );
            classes.entry(profile).or_default().push(i);
        }
        classes
            .into_values()
            .filter(|members| members.len() >= quota)
            .map(|members| members[0])
            .min()
            .map(|i| cliques[i].clone())
    }

    /// Applies rules until none applies.
    pub fn run(&mut self) {
        while self.step().is_some() {}
    }

    /// Checks the size guarantees of a fixpoint with positive demand.
    pub fn check_fixpoint_bounds(&self) -> Result<()> {
        if self.instance.demand() == 0 {
            return Ok(());
        }
        let ell = self.instance.path_order();
        let m = self.modulator().len();
        let cliques = self.cliques();
        let marks = mark_vertices(&self.instance, self.modulator(), &cliques);
        let non_a = nonterminal_threshold(ell, m);
        let size_cap = f1(ell, m)
            + f2(ell, m)
            + match terminal_threshold(ell, m) {
                Some(thr) => non_a.max(thr - 1 + ell - 3),
                None => non_a,
            };
        for (i, (q, mk)) in cliques.iter().zip(&marks.cliques).enumerate() {
            if mk.marked_in_a.len() > f1(ell, m) || mk.marked_out_a.len() > f2(ell, m) {
                return Err(Error::Internal(format!(
                    "clique {i} exceeds its mark budget"
                )));
            }
            let (a, b) = self.unmarked(q, mk);
            let stuck = (a.len() >= 2 && b.len() + 2 >= ell)
                || (a.len() <= 1 && b.len() >= non_a)
                || terminal_threshold(ell, m)
                    .is_some_and(|thr| b.len() + 3 <= ell && a.len() >= thr);
            if stuck || q.len() > size_cap {
                return Err(Error::Internal(format!(
                    "clique {i} is above the fixpoint bounds"
                )));
            }
        }
        if self.oversized_class(&cliques).is_some() {
            return Err(Error::Internal(
                "an equivalence class kept too many cliques".into(),
            ));
        }
        Ok(())
    }
}

/// Disjoint (A, l)-paths that fit inside a clique with `terminals` terminals and `others`
/// non-terminals.
pub fn paths_inside(terminals: usize, others: usize, ell: usize) -> usize {
    if ell == 2 {
        terminals / 2
    } else {
        (terminals / 2).min(others / (ell - 2))
    }
}

/// Outcome of [`solve_cvd_ell`].
#[derive(Debug, Clone)]
pub struct CvdEllRun {
    pub answer: Answer,
    pub trace: Trace,
    /// Size of the instance handed to the exact solver.
    pub residue_vertices: usize,
}

/// Exact solver for instances with a small cluster vertex deletion set and small path order.
///
/// For `l ≤ 4` the exact solver runs on the input directly.
pub fn solve_cvd_ell(instance: &Instance, catalog_cap: usize) -> Result<CvdEllRun> {
    let k = instance.demand();
    if k == 0 {
        return Ok(CvdEllRun {
            answer: Answer::Yes(Packing::default()),
            trace: Trace::new(),
            residue_vertices: instance.vertex_count(),
        });
    }
    if instance.path_order() <= 4 {
        let mut trace = Trace::new();
        trace.note("fallback: ℓ ≤ 4");
        return Ok(CvdEllRun {
            answer: solve_exact_with_cap(instance, catalog_cap)?,
            trace,
            residue_vertices: instance.vertex_count(),
        });
    }
    let mut reducer = CvdEllReducer::new(instance)?;
    reducer.run();
    reducer.check_fixpoint_bounds()?;
    let residue = reducer.instance();
    let answer = match solve_exact_with_cap(residue, catalog_cap)? {
        Answer::Yes(packing) => {
            let mut paths: Vec<Path> = reducer.trace().extracted_paths().cloned().collect();
            paths.extend(packing.relabel(reducer.origin()).paths);
            paths.truncate(k);
            Answer::Yes(Packing::new(paths))
        }
        other => other,
    };
    Ok(CvdEllRun {
        answer,
        residue_vertices: residue.vertex_count(),
        trace: reducer.trace,
    })
}
