//! Problem instances, candidate paths and packing certificates.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modulator;

/// Which structure a declared modulator guarantees for `G - M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModulatorKind {
    /// `G - M` has no edges.
    VertexCover,
    /// `G - M` is a disjoint union of cliques.
    Cvd,
    /// `G - M` is a disjoint union of cliques and every terminal lies in `M`.
    CvdContainingTerminals,
}

impl ModulatorKind {
    /// The keyword used in instance files.
    pub fn keyword(self) -> &'static str {
        match self {
            ModulatorKind::VertexCover => "vc",
            ModulatorKind::Cvd => "cvd",
            ModulatorKind::CvdContainingTerminals => "cvda",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "vc" => Some(ModulatorKind::VertexCover),
            "cvd" => Some(ModulatorKind::Cvd),
            "cvda" => Some(ModulatorKind::CvdContainingTerminals),
            _ => None,
        }
    }
}

/// A vertex set together with the property it is declared to have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulator {
    pub kind: ModulatorKind,
    /// Sorted, duplicate-free.
    pub vertices: Vec<usize>,
}

impl Modulator {
    pub fn new(kind: ModulatorKind, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Modulator { kind, vertices }
    }
}

/// One input of the packing problem: is there a family of `demand` vertex-disjoint paths,
/// each with exactly `path_order` vertices, whose endpoints are two distinct terminals and
/// whose inner vertices are all non-terminals?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    is_terminal: Vec<bool>,
    path_order: usize,
    demand: usize,
    modulator: Option<Modulator>,
}

impl Instance {
    /// Builds an instance, checking every invariant (including the declared modulator
    /// property).
    pub fn new(
        graph: Graph,
        terminals: impl IntoIterator<Item = usize>,
        path_order: usize,
        demand: usize,
        modulator: Option<Modulator>,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        if path_order < 2 {
            return Err(Error::InvalidInstance("path_order < 2".into()));
        }
        let mut is_terminal = vec![false; n];
        for t in terminals {
            if t >= n {
                return Err(Error::InvalidInstance(format!(
                    "terminal {} outside 1..={n}",
                    t + 1
                )));
            }
            is_terminal[t] = true;
        }
        let instance = Instance {
            graph,
            is_terminal,
            path_order,
            demand,
            modulator,
        };
        if let Some(m) = &instance.modulator {
            instance.check_modulator(m)?;
        }
        Ok(instance)
    }

    fn check_modulator(&self, m: &Modulator) -> Result<()> {
        let n = self.vertex_count();
        if let Some(&v) = m.vertices.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidInstance(format!(
                "modulator vertex {} outside 1..={n}",
                v + 1
            )));
        }
        let mut inside = vec![false; n];
        for &v in &m.vertices {
            inside[v] = true;
        }
        match m.kind {
            ModulatorKind::VertexCover => {
                if let Some((u, v)) = self.graph.edges().find(|&(u, v)| !inside[u] && !inside[v]) {
                    return Err(Error::InvalidInstance(format!(
                        "modulator is not a vertex cover: edge ({}, {}) survives",
                        u + 1,
                        v + 1
                    )));
                }
            }
            ModulatorKind::Cvd | ModulatorKind::CvdContainingTerminals => {
                if m.kind == ModulatorKind::CvdContainingTerminals {
                    if let Some(t) = (0..n).find(|&v| self.is_terminal[v] && !inside[v]) {
                        return Err(Error::InvalidInstance(format!(
                            "terminal {} lies outside the cvda modulator",
                            t + 1
                        )));
                    }
                }
                modulator::cluster_decomposition(&self.graph, &m.vertices).map_err(|e| {
                    Error::InvalidInstance(format!("modulator is not a cvd set: {e}"))
                })?;
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn path_order(&self) -> usize {
        self.path_order
    }

    pub fn demand(&self) -> usize {
        self.demand
    }

    pub fn modulator(&self) -> Option<&Modulator> {
        self.modulator.as_ref()
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.is_terminal[v]
    }

    pub fn terminal_mask(&self) -> &[bool] {
        &self.is_terminal
    }

    /// Sorted list of terminals.
    pub fn terminals(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.is_terminal[v])
            .collect()
    }

    pub fn terminal_count(&self) -> usize {
        self.is_terminal.iter().filter(|&&t| t).count()
    }

    /// Same instance with a different demand.
    pub fn with_demand(&self, demand: usize) -> Instance {
        Instance {
            demand,
            ..self.clone()
        }
    }

    /// Same instance with the modulator replaced. The modulator property is re-checked.
    pub fn with_modulator(&self, modulator: Option<Modulator>) -> Result<Instance> {
        let out = Instance {
            modulator,
            ..self.clone()
        };
        if let Some(m) = &out.modulator {
            out.check_modulator(m)?;
        }
        Ok(out)
    }

    /// The instance induced on the vertices with `keep[v] == true`, demand replaced by
    /// `demand`. Terminals and modulator are restricted to survivors; every modulator kind
    /// is closed under vertex deletion, so no re-check is needed.
    ///
    /// Returns the reduced instance and its new-id to old-id map.
    pub fn induced(&self, keep: &[bool], demand: usize) -> (Instance, Vec<usize>) {
        let (graph, origin) = self.graph.induced(keep);
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in origin.iter().enumerate() {
            new_id[v] = i;
        }
        let is_terminal = origin.iter().map(|&v| self.is_terminal[v]).collect();
        let modulator = self.modulator.as_ref().map(|m| Modulator {
            kind: m.kind,
            vertices: m
                .vertices
                .iter()
                .filter(|&&v| keep[v])
                .map(|&v| new_id[v])
                .collect(),
        });
        (
            Instance {
                graph,
                is_terminal,
                path_order: self.path_order,
                demand,
                modulator,
            },
            origin,
        )
    }

    /// Checks whether `path` is an (A, l)-path of this instance.
    pub fn check_path(&self, path: &Path) -> std::result::Result<(), Violation> {
        self.path_violations(0, path)
            .into_iter()
            .next()
            .map_or(Ok(()), Err)
    }

    fn path_violations(&self, index: usize, path: &Path) -> Vec<Violation> {
        let mut out = Vec::new();
        let vs = path.vertices();
        let n = self.vertex_count();
        if vs.len() != self.path_order {
            out.push(Violation::WrongLength {
                path: index,
                found: vs.len(),
                expected: self.path_order,
            });
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            out.push(Violation::OutOfRange {
                path: index,
                vertex: v,
            });
            return out;
        }
        let mut seen = vec![false; n];
        for &v in vs {
            if std::mem::replace(&mut seen[v], true) {
                out.push(Violation::RepeatedVertex {
                    path: index,
                    vertex: v,
                });
            }
        }
        for w in vs.windows(2) {
            if !self.graph.has_edge(w[0], w[1]) {
                out.push(Violation::MissingEdge {
                    path: index,
                    from: w[0],
                    to: w[1],
                });
            }
        }
        if let (Some(&first), Some(&last)) = (vs.first(), vs.last()) {
            for end in [first, last] {
                if !self.is_terminal[end] {
                    out.push(Violation::EndpointNotTerminal {
                        path: index,
                        vertex: end,
                    });
                }
            }
            if vs.len() == 1 {
                out.push(Violation::RepeatedVertex {
                    path: index,
                    vertex: first,
                });
            }
        }
        if vs.len() > 2 {
            for &v in &vs[1..vs.len() - 1] {
                if self.is_terminal[v] {
                    out.push(Violation::InnerTerminal {
                        path: index,
                        vertex: v,
                    });
                }
            }
        }
        out
    }
}

/// A vertex sequence; consecutive entries are meant to be adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    /// Rewrites every vertex through `map`.
    pub fn relabel(&self, map: &[usize]) -> Path {
        Path(self.0.iter().map(|&v| map[v]).collect())
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<usize>> for Path {
    fn from(v: Vec<usize>) -> Self {
        Path(v)
    }
}

/// A family of paths offered as a YES certificate.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Packing {
    pub paths: Vec<Path>,
}

impl Packing {
    pub fn new(paths: Vec<Path>) -> Self {
        Packing { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn relabel(&self, map: &[usize]) -> Packing {
        Packing {
            paths: self.paths.iter().map(|p| p.relabel(map)).collect(),
        }
    }
}

/// One reason a packing is not a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewPaths {
        found: usize,
        required: usize,
    },
    WrongLength {
        path: usize,
        found: usize,
        expected: usize,
    },
    OutOfRange {
        path: usize,
        vertex: usize,
    },
    RepeatedVertex {
        path: usize,
        vertex: usize,
    },
    MissingEdge {
        path: usize,
        from: usize,
        to: usize,
    },
    EndpointNotTerminal {
        path: usize,
        vertex: usize,
    },
    InnerTerminal {
        path: usize,
        vertex: usize,
    },
    Intersect {
        first: usize,
        second: usize,
        vertex: usize,
    },
}

impl Violation {
    /// Renders the violation, numbering vertices from `base` (0 for internal ids, 1 for
    /// file ids).
    pub fn describe(&self, base: usize) -> String {
        match *self {
            Violation::TooFewPaths { found, required } => {
                format!("packing has {found} paths, demand is {required}")
            }
            Violation::WrongLength {
                path,
                found,
                expected,
            } => {
                format!("path {path}: path has {found} vertices, expected {expected}")
            }
            Violation::OutOfRange { path, vertex } => {
                format!("path {path}: vertex v{} does not exist", vertex + base)
            }
            Violation::RepeatedVertex { path, vertex } => {
                format!("path {path}: vertex v{} repeats", vertex + base)
            }
            Violation::MissingEdge { path, from, to } => format!(
                "path {path}: v{} and v{} are not adjacent",
                from + base,
                to + base
            ),
            Violation::EndpointNotTerminal { path, vertex } => {
                format!("path {path}: endpoint v{} is not a terminal", vertex + base)
            }
            Violation::InnerTerminal { path, vertex } => {
                format!("path {path}: inner vertex v{} is a terminal", vertex + base)
            }
            Violation::Intersect {
                first,
                second,
                vertex,
            } => {
                format!("paths {first},{second} intersect at v{}", vertex + base)
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(0))
    }
}

/// Outcome of [`validate_packing`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `packing` certifies a YES answer for `instance`: at least `demand` paths,
/// each an (A, l)-path, pairwise vertex-disjoint. Violations are collected, not thrown.
pub fn validate_packing(instance: &Instance, packing: &Packing) -> ValidationReport {
    let mut violations = Vec::new();
    if packing.len() < instance.demand() {
        violations.push(Violation::TooFewPaths {
            found: packing.len(),
            required: instance.demand(),
        });
    }
    let n = instance.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, path) in packing.paths.iter().enumerate() {
        violations.extend(instance.path_violations(i, path));
        let mut distinct: Vec<usize> = path.vertices().iter().copied().filter(|&v| v < n).collect();
        distinct.sort_unstable();
        distinct.dedup();
        for v in distinct {
            match owner[v] {
                Some(j) => violations.push(Violation::Intersect {
                    first: j,
                    second: i,
                    vertex: v,
                }),
                None => owner[v] = Some(i),
            }
        }
    }
    ValidationReport { violations }
}
