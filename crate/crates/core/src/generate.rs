//! Seeded instance generators.
//!
//! Every generator is a pure function of its parameters and seed. None of them emits loops or
//! parallel edges. Planted generators return their witness packing alongside the instance.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, Modulator, ModulatorKind, Packing, Path};

/// An instance together with a packing that solves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planted {
    pub instance: Instance,
    pub packing: Packing,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "probability {p} outside [0, 1]"
        )))
    }
}

/// `G(n, p)` with `terminals` terminals sampled uniformly.
pub fn gen_random(
    n: usize,
    edge_prob: f64,
    terminals: usize,
    demand: usize,
    path_order: usize,
    seed: u64,
) -> Result<Instance> {
    check_prob(edge_prob)?;
    if terminals > n {
        return Err(Error::Precondition(format!(
            "{terminals} terminals among {n} vertices"
        )));
    }
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                g.add_edge(u, v)?;
            }
        }
    }
    let a = index::sample(&mut rng, n, terminals).into_vec();
    Instance::new(g, a, path_order, demand, None)
}

/// `k` disjoint paths of order `path_order` on randomly relabeled vertices, with the path
/// endpoints as the only terminals. Noise edges join pairs of spare vertices or a spare
/// vertex to a path interior, each with probability `noise_prob`; the planted paths survive.
pub fn gen_planted(
    n: usize,
    demand: usize,
    path_order: usize,
    noise_prob: f64,
    seed: u64,
) -> Result<Planted> {
    check_prob(noise_prob)?;
    if path_order < 2 {
        return Err(Error::InvalidInstance("path_order < 2".into()));
    }
    let used = demand * path_order;
    if used > n {
        return Err(Error::Precondition(format!(
            "{demand} paths of order {path_order} need {used} > {n} vertices"
        )));
    }
    let mut rng = rng_for(seed);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut g = Graph::new(n);
    let mut paths = Vec::with_capacity(demand);
    let mut terminals = Vec::new();
    let mut interior = Vec::new();
    for i in 0..demand {
        let vs: Vec<usize> = (i * path_order..(i + 1) * path_order)
            .map(|x| label[x])
            .collect();
        for w in vs.windows(2) {
            g.add_edge(w[0], w[1])?;
        }
        terminals.push(vs[0]);
        terminals.push(vs[path_order - 1]);
        interior.extend_from_slice(&vs[1..path_order - 1]);
        paths.push(Path::new(vs));
    }
    let spare: Vec<usize> = (used..n).map(|x| label[x]).collect();
    for (i, &u) in spare.iter().enumerate() {
        for &v in spare[i + 1..].iter().chain(&interior) {
            if rng.gen_bool(noise_prob) {
                g.add_edge(u, v)?;
            }
        }
    }
    let instance = Instance::new(g, terminals, path_order, demand, None)?;
    Ok(Planted {
        instance,
        packing: Packing::new(paths),
    })
}

/// Shape of [`gen_vc_structured`] instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VcParams {
    pub n: usize,
    /// Size of the hidden vertex cover.
    pub cover: usize,
    /// Edge probability inside the cover and between the cover and the rest.
    pub edge_prob: f64,
    pub terminal_prob: f64,
    pub path_order: usize,
    pub demand: usize,
}

/// A graph whose first `cover` vertices form a vertex cover; the rest is independent.
/// Independent vertices copy one of a few neighborhood templates so that they collide often.
pub fn gen_vc_structured(params: &VcParams, seed: u64) -> Result<Instance> {
    check_prob(params.edge_prob)?;
    check_prob(params.terminal_prob)?;
    if params.cover > params.n {
        return Err(Error::Precondition("cover larger than the graph".into()));
    }
    let mut rng = rng_for(seed);
    let m = params.cover;
    let mut g = Graph::new(params.n);
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(params.edge_prob) {
                g.add_edge(u, v)?;
            }
        }
    }
    let templates: Vec<Vec<usize>> = (0..m.max(1))
        .map(|_| (0..m).filter(|_| rng.gen_bool(params.edge_prob)).collect())
        .collect();
    for v in m..params.n {
        let nbrs = if rng.gen_bool(0.5) {
            templates.choose(&mut rng).cloned().unwrap_or_default()
        } else {
            (0..m).filter(|_| rng.gen_bool(params.edge_prob)).collect()
        };
        for u in nbrs {
            g.add_edge(u, v)?;
        }
    }
    let terminals: Vec<usize> = (0..params.n)
        .filter(|_| rng.gen_bool(params.terminal_prob))
        .collect();
    Instance::new(g, terminals, params.path_order, params.demand, None)
}

/// Shape of [`gen_cluster`] instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterParams {
    pub cliques: usize,
    pub max_clique: usize,
    /// Number of modulator vertices.
    pub modulator: usize,
    /// Probability that a modulator vertex sees a given clique at all.
    pub attach_prob: f64,
    pub terminal_prob: f64,
    pub path_order: usize,
    pub demand: usize,
}

/// A cluster graph plus a declared `cvd` modulator. Cliques are drawn from a small pool of
/// shapes (size, terminal count, modulator neighborhood), so equivalent cliques repeat.
pub fn gen_cluster(params: &ClusterParams, seed: u64) -> Result<Instance> {
    check_prob(params.attach_prob)?;
    check_prob(params.terminal_prob)?;
    if params.max_clique == 0 {
        return Err(Error::Precondition("max_clique must be positive".into()));
    }
    let mut rng = rng_for(seed);
    let m = params.modulator;
    let shapes: Vec<(usize, usize, Vec<Vec<bool>>)> = (0..params.cliques.div_ceil(2).max(1))
        .map(|_| {
            let size = rng.gen_range(1..=params.max_clique);
            let terminals = (0..size)
                .filter(|_| rng.gen_bool(params.terminal_prob))
                .count();
            let attach: Vec<Vec<bool>> = (0..m)
                .map(|_| {
                    let sees = rng.gen_bool(params.attach_prob);
                    (0..size).map(|_| sees && rng.gen_bool(0.6)).collect()
                })
                .collect();
            (size, terminals, attach)
        })
        .collect();
    let picks: Vec<usize> = (0..params.cliques)
        .map(|_| rng.gen_range(0..shapes.len()))
        .collect();
    let n = m + picks.iter().map(|&s| shapes[s].0).sum::<usize>();
    let mut g = Graph::new(n);
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v)?;
            }
        }
    }
    let mut terminals: Vec<usize> = (0..m)
        .filter(|_| rng.gen_bool(params.terminal_prob))
        .collect();
    let mut start = m;
    for &s in &picks {
        let (size, t, attach) = &shapes[s];
        for u in start..start + size {
            for v in u + 1..start + size {
                g.add_edge(u, v)?;
            }
        }
        terminals.extend(start..start + t);
        for (x, row) in attach.iter().enumerate() {
            for (i, &on) in row.iter().enumerate() {
                if on {
                    g.add_edge(x, start + i)?;
                }
            }
        }
        start += size;
    }
    let modulator = Modulator::new(ModulatorKind::Cvd, (0..m).collect());
    Instance::new(
        g,
        terminals,
        params.path_order,
        params.demand,
        Some(modulator),
    )
}

/// Shape of [`gen_terminal_cluster`] instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalClusterParams {
    pub terminals: usize,
    /// Non-terminal modulator vertices.
    pub deletion: usize,
    pub cliques: usize,
    pub max_clique: usize,
    /// Probability of each edge between `A ∪ S` and the rest (and inside `A ∪ S`).
    pub edge_prob: f64,
    pub path_order: usize,
    pub demand: usize,
}

struct TerminalCluster {
    graph: Graph,
    cliques: Vec<Vec<usize>>,
    /// `A` occupies `0..terminals`, `S` the next `deletion` ids.
    terminals: usize,
    deletion: usize,
}

fn terminal_cluster_base(
    params: &TerminalClusterParams,
    rng: &mut ChaCha8Rng,
) -> Result<TerminalCluster> {
    check_prob(params.edge_prob)?;
    if params.max_clique == 0 {
        return Err(Error::Precondition("max_clique must be positive".into()));
    }
    let head = params.terminals + params.deletion;
    let sizes: Vec<usize> = (0..params.cliques)
        .map(|_| rng.gen_range(1..=params.max_clique))
        .collect();
    let n = head + sizes.iter().sum::<usize>();
    let mut g = Graph::new(n);
    let mut cliques = Vec::new();
    let mut start = head;
    for s in sizes {
        for u in start..start + s {
            for v in u + 1..start + s {
                g.add_edge(u, v)?;
            }
        }
        cliques.push((start..start + s).collect());
        start += s;
    }
    for u in 0..head {
        for v in u + 1..n {
            if rng.gen_bool(params.edge_prob) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(TerminalCluster {
        graph: g,
        cliques,
        terminals: params.terminals,
        deletion: params.deletion,
    })
}

fn terminal_cluster_instance(
    base: TerminalCluster,
    params: &TerminalClusterParams,
) -> Result<Instance> {
    let head = base.terminals + base.deletion;
    let modulator = Modulator::new(ModulatorKind::CvdContainingTerminals, (0..head).collect());
    Instance::new(
        base.graph,
        0..base.terminals,
        params.path_order,
        params.demand,
        Some(modulator),
    )
}

/// Terminals `A` and a deletion set `S` over a cluster graph, with random edges from `A ∪ S`.
/// Declares `A ∪ S` as a `cvda` modulator.
pub fn gen_terminal_cluster(params: &TerminalClusterParams, seed: u64) -> Result<Instance> {
    let mut rng = rng_for(seed);
    let base = terminal_cluster_base(params, &mut rng)?;
    terminal_cluster_instance(base, params)
}

/// [`gen_terminal_cluster`] with `demand` planted paths. Each path leaves a terminal, walks
/// through clique vertices, hops between cliques over unused `S` vertices when it needs more
/// room, and ends at another terminal. Only edges touching `A ∪ S` are added, so the cluster
/// structure is kept.
pub fn gen_terminal_cluster_planted(params: &TerminalClusterParams, seed: u64) -> Result<Planted> {
    if 2 * params.demand > params.terminals {
        return Err(Error::Precondition(
            "not enough terminals for the planted paths".into(),
        ));
    }
    let mut rng = rng_for(seed);
    let mut base = terminal_cluster_base(params, &mut rng)?;
    let ell = params.path_order;
    if ell < 2 {
        return Err(Error::InvalidInstance("path_order < 2".into()));
    }
    let mut free: Vec<Vec<usize>> = base.cliques.clone();
    for q in free.iter_mut() {
        q.shuffle(&mut rng);
    }
    let mut hubs: Vec<usize> = (base.terminals..base.terminals + base.deletion).collect();
    hubs.shuffle(&mut rng);
    let mut ends: Vec<usize> = (0..base.terminals).collect();
    ends.shuffle(&mut rng);
    let mut paths = Vec::new();
    for i in 0..params.demand {
        let mut inner: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..free.len()).collect();
        order.shuffle(&mut rng);
        let mut cursor = order.into_iter();
        while inner.len() < ell - 2 {
            let need = ell - 2 - inner.len();
            if !inner.is_empty() {
                // Crossing into another clique needs a hub in between.
                match hubs.pop() {
                    Some(h) => inner.push(h),
                    None => {
                        return Err(Error::Precondition(
                            "ran out of room for the planted paths".into(),
                        ))
                    }
                }
                if inner.len() == ell - 2 {
                    break;
                }
            }
            let Some(c) = cursor.by_ref().find(|&c| !free[c].is_empty()) else {
                return Err(Error::Precondition(
                    "ran out of room for the planted paths".into(),
                ));
            };
            let take = need.min(free[c].len()).min(ell - 2 - inner.len());
            let split = free[c].len() - take;
            inner.extend(free[c].drain(split..));
        }
        let mut vs = vec![ends[2 * i]];
        vs.extend(inner);
        vs.push(ends[2 * i + 1]);
        for w in vs.windows(2) {
            base.graph.ensure_edge(w[0], w[1])?;
        }
        paths.push(Path::new(vs));
    }
    let instance = terminal_cluster_instance(base, params)?;
    Ok(Planted {
        instance,
        packing: Packing::new(paths),
    })
}
