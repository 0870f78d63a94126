//! Kernelization by vertex cover: shrinks the independent side `I = V ∖ M` to at most
//! `2|M| + 2·C(|M|, 2)` vertices without changing the answer.

use crate::error::{Error, Result};
use crate::expansion::{q_expansion, BipartiteGraph};
use crate::graph::Graph;
use crate::instance::{Instance, Modulator, ModulatorKind};
use crate::modulator::{vertex_cover, CoverMode, DEFAULT_EXACT_COVER_CAP};
use crate::trace::{RuleId, Trace, TraceEvent};

/// Order in which the two expansion rules are run to their fixpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RuleOrder {
    /// Terminal compression, then non-terminal compression.
    #[default]
    TerminalsFirst,
    InternalsFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VcKernelOptions {
    /// How to obtain a cover when the instance does not declare one.
    pub cover_mode: CoverMode,
    pub cover_cap: usize,
    pub order: RuleOrder,
}

impl Default for VcKernelOptions {
    fn default() -> Self {
        VcKernelOptions {
            cover_mode: CoverMode::Approx2,
            cover_cap: DEFAULT_EXACT_COVER_CAP,
            order: RuleOrder::TerminalsFirst,
        }
    }
}

/// An instance under kernelization, with its vertex cover `M` declared as the modulator.
#[derive(Debug, Clone)]
pub struct VcKernelState {
    instance: Instance,
    origin: Vec<usize>,
    trace: Trace,
}

impl VcKernelState {
    /// Starts from `instance`, using its declared vertex cover or computing one.
    pub fn new(instance: &Instance, options: &VcKernelOptions) -> Result<Self> {
        let instance = match instance.modulator() {
            Some(m) if m.kind == ModulatorKind::VertexCover => instance.clone(),
            _ => {
                let cover = vertex_cover(instance.graph(), options.cover_mode, options.cover_cap)?;
                instance.with_modulator(Some(Modulator::new(ModulatorKind::VertexCover, cover)))?
            }
        };
        Ok(VcKernelState {
            origin: (0..instance.vertex_count()).collect(),
            instance,
            trace: Trace::new(),
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    /// Current-to-original vertex map.
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    /// The cover `M`, sorted.
    pub fn modulator(&self) -> &[usize] {
        &self
            .instance
            .modulator()
            .expect("state always carries its cover")
            .vertices
    }

    fn in_modulator(&self) -> Vec<bool> {
        let mut out = vec![false; self.instance.vertex_count()];
        for &v in self.modulator() {
            out[v] = true;
        }
        out
    }

    /// `I = V ∖ M`, sorted.
    pub fn independent_part(&self) -> Vec<usize> {
        let inside = self.in_modulator();
        (0..self.instance.vertex_count())
            .filter(|&v| !inside[v])
            .collect()
    }

    /// `A_I = I ∩ A`, sorted.
    pub fn terminals_in_independent(&self) -> Vec<usize> {
        self.independent_part()
            .into_iter()
            .filter(|&v| self.instance.is_terminal(v))
            .collect()
    }

    /// `I ∖ A`, sorted.
    pub fn nonterminals_in_independent(&self) -> Vec<usize> {
        self.independent_part()
            .into_iter()
            .filter(|&v| !self.instance.is_terminal(v))
            .collect()
    }

    fn modulator_nonterminals(&self) -> Vec<usize> {
        self.modulator()
            .iter()
            .copied()
            .filter(|&v| !self.instance.is_terminal(v))
            .collect()
    }

    /// An (A, l)-path alternates between `I` and `M`, so it has at most `2|M| + 1` vertices.
    /// Returns `true` when that already rules out a positive demand.
    pub fn quick_no_check(&self) -> bool {
        self.instance.demand() >= 1 && self.instance.path_order() > 2 * self.modulator().len() + 1
    }

    fn delete(&mut self, vertices: &[usize], rule: RuleId) {
        let mut keep = vec![true; self.instance.vertex_count()];
        for &v in vertices {
            keep[v] = false;
        }
        self.trace.push(TraceEvent::Applied {
            rule,
            deleted: vertices.iter().map(|&v| self.origin[v]).collect(),
            demand_drop: 0,
            extracted: Vec::new(),
        });
        let (reduced, origin) = self.instance.induced(&keep, self.instance.demand());
        self.origin = origin.iter().map(|&v| self.origin[v]).collect();
        self.instance = reduced;
    }

    /// Deletes non-terminals of `I` with at most one neighbor; they lie on no (A, l)-path.
    /// Returns the number of deleted vertices.
    pub fn remove_pendants(&mut self) -> usize {
        let graph = self.instance.graph();
        let pendants: Vec<usize> = self
            .nonterminals_in_independent()
            .into_iter()
            .filter(|&v| graph.degree(v) <= 1)
            .collect();
        if !pendants.is_empty() {
            self.delete(&pendants, RuleId::VcPendant);
        }
        pendants.len()
    }

    /// Bipartite graph between the non-terminals of `M` (left) and `A_I` (right), with the
    /// edges of `G` between them. Returns it with the vertex ids of both sides.
    pub fn build_h1(&self) -> (BipartiteGraph, Vec<usize>, Vec<usize>) {
        let left = self.modulator_nonterminals();
        let right = self.terminals_in_independent();
        let graph = self.instance.graph();
        let mut h = BipartiteGraph::new(left.len(), right.len());
        for (i, &u) in left.iter().enumerate() {
            for (j, &v) in right.iter().enumerate() {
                if graph.has_edge(u, v) {
                    h.add_edge(i, j).expect("indices in range");
                }
            }
        }
        (h, left, right)
    }

    /// Bipartite graph between all pairs of `M` (left, lexicographic) and `I ∖ A` (right); a
    /// pair sees `u` when both members are neighbors of `u`.
    pub fn build_h2(&self) -> (BipartiteGraph, Vec<(usize, usize)>, Vec<usize>) {
        let m = self.modulator();
        let pairs: Vec<(usize, usize)> = m
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| m[i + 1..].iter().map(move |&y| (x, y)))
            .collect();
        let right = self.nonterminals_in_independent();
        let graph = self.instance.graph();
        let mut h = BipartiteGraph::new(pairs.len(), right.len());
        for (i, &(x, y)) in pairs.iter().enumerate() {
            for (j, &u) in right.iter().enumerate() {
                if graph.has_edge(x, u) && graph.has_edge(y, u) {
                    h.add_edge(i, j).expect("indices in range");
                }
            }
        }
        (h, pairs, right)
    }

    /// While `|A_I| > 2|M ∖ A|`, deletes the lowest unsaturated vertex of the right core of a
    /// 2-expansion in `H1`. Returns the number of deletions.
    pub fn rule1_compress_terminals(&mut self) -> Result<usize> {
        let mut applied = 0;
        loop {
            let (h, left, right) = self.build_h1();
            if right.len() <= 2 * left.len() {
                return Ok(applied);
            }
            let victim = pick_unsaturated(&h, &right, "terminal")?;
            self.delete(&[victim], RuleId::VcTerminal);
            applied += 1;
        }
    }

    /// While `|I ∖ A| > 2·C(|M|, 2)`, deletes the lowest unsaturated vertex of the right core
    /// of a 2-expansion in `H2`. Returns the number of deletions.
    pub fn rule2_compress_internals(&mut self) -> Result<usize> {
        let mut applied = 0;
        loop {
            let (h, pairs, right) = self.build_h2();
            if right.len() <= 2 * pairs.len() {
                return Ok(applied);
            }
            let victim = pick_unsaturated(&h, &right, "non-terminal")?;
            self.delete(&[victim], RuleId::VcInternal);
            applied += 1;
        }
    }

    /// Whether `|A_I| ≤ 2|M ∖ A|` and `|I ∖ A| ≤ 2·C(|M|, 2)`.
    pub fn bound_holds(&self) -> bool {
        let m = self.modulator().len();
        self.terminals_in_independent().len() <= 2 * self.modulator_nonterminals().len()
            && self.nonterminals_in_independent().len() <= m * m.saturating_sub(1)
    }

    pub fn into_kernel(self) -> VcKernel {
        VcKernel {
            instance: self.instance,
            origin: self.origin,
            trace: self.trace,
        }
    }
}

fn pick_unsaturated(h: &BipartiteGraph, right: &[usize], what: &str) -> Result<usize> {
    let expansion = q_expansion(h, 2)?;
    match expansion.unsaturated_right_core().first() {
        Some(&j) => Ok(right[j]),
        None => Err(Error::Internal(format!(
            "no unsaturated {what} in the expansion core although the right side is too large"
        ))),
    }
}

/// Output of [`kernelize_vc`].
#[derive(Debug, Clone)]
pub struct VcKernel {
    /// The reduced instance; its modulator is the vertex cover used.
    pub instance: Instance,
    /// Reduced-to-original vertex map.
    pub origin: Vec<usize>,
    pub trace: Trace,
}

impl VcKernel {
    /// `|M| + 2|M| + 2·C(|M|, 2)`, the guaranteed vertex bound for the output.
    pub fn vertex_bound(&self) -> usize {
        let m = self.instance.modulator().map_or(0, |m| m.vertices.len());
        m + 2 * m + m * m.saturating_sub(1)
    }
}

/// Kernelizes `instance` with respect to a vertex cover.
///
/// For `l ≤ 4` the instance is returned unchanged with a `fallback: ℓ ≤ 4` note. When
/// `l > 2|M| + 1` and `k ≥ 1` a trivial NO instance (no vertices, `k = 1`) is returned.
pub fn kernelize_vc(instance: &Instance, options: &VcKernelOptions) -> Result<VcKernel> {
    let mut state = VcKernelState::new(instance, options)?;
    if instance.path_order() <= 4 {
        state.trace.note("fallback: ℓ ≤ 4");
        return Ok(state.into_kernel());
    }
    if state.quick_no_check() {
        let mut trace = Trace::new();
        trace.note(format!(
            "quick NO: ℓ = {} > 2|M| + 1 = {}",
            instance.path_order(),
            2 * state.modulator().len() + 1
        ));
        let empty = Instance::new(
            Graph::new(0),
            [],
            instance.path_order(),
            1,
            Some(Modulator::new(ModulatorKind::VertexCover, Vec::new())),
        )?;
        return Ok(VcKernel {
            instance: empty,
            origin: Vec::new(),
            trace,
        });
    }
    loop {
        let mut changed = state.remove_pendants();
        match options.order {
            RuleOrder::TerminalsFirst => {
                changed += state.rule1_compress_terminals()?;
                changed += state.rule2_compress_internals()?;
            }
            RuleOrder::InternalsFirst => {
                changed += state.rule2_compress_internals()?;
                changed += state.rule1_compress_terminals()?;
            }
        }
        if changed == 0 {
            break;
        }
    }
    if !state.bound_holds() {
        return Err(Error::Internal(
            "vertex-cover kernel exceeds its size bound".into(),
        ));
    }
    Ok(state.into_kernel())
}
