use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::answer::Answer;
use crate::error::{Error, Result};
use crate::instance::{Instance, Packing, Path};

/// Default cap on `k·l`, the number of colors.
pub const DEFAULT_WIDTH_CAP: usize = 24;

/// Result of a color-coding run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorCodingRun {
    pub answer: Answer,
    pub trials_used: usize,
}

/// Trials needed so that a fixed packing is colorful in at least one trial with probability
/// `1 - failure`: `ln(1/failure) · w^w / w!` with `w = k·l`.
pub fn default_trials(colors: usize, failure: f64) -> usize {
    let mut inverse_p = 1.0f64;
    for i in 1..=colors {
        inverse_p *= colors as f64 / i as f64;
    }
    (inverse_p * (1.0 / failure).ln()).ceil().max(1.0) as usize
}

/// One-sided randomized solver: each trial colors the vertices with `k·l` colors and looks
/// for `k` disjoint paths whose vertices all get distinct colors.
pub fn solve_color_coding(
    instance: &Instance,
    trials: usize,
    seed: u64,
    width_cap: usize,
) -> Result<ColorCodingRun> {
    let k = instance.demand();
    if k == 0 {
        return Ok(ColorCodingRun {
            answer: Answer::Yes(Packing::default()),
            trials_used: 0,
        });
    }
    let width = k * instance.path_order();
    if width > width_cap {
        return Err(Error::TooLarge(format!(
            "k·l = {width} exceeds the color-coding width cap {width_cap}"
        )));
    }
    if width > instance.vertex_count() || 2 * k > instance.terminal_count() {
        return Ok(ColorCodingRun {
            answer: Answer::NoProbable,
            trials_used: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coloring = vec![0usize; instance.vertex_count()];
    for trial in 1..=trials {
        for c in coloring.iter_mut() {
            *c = rng.gen_range(0..width);
        }
        if let Some(packing) = colorful_packing(instance, &coloring) {
            return Ok(ColorCodingRun {
                answer: Answer::Yes(packing),
                trials_used: trial,
            });
        }
    }
    Ok(ColorCodingRun {
        answer: Answer::NoProbable,
        trials_used: trials,
    })
}

/// Searches for `k` vertex-disjoint colorful (A, l)-paths with pairwise disjoint color sets.
pub fn colorful_packing(instance: &Instance, coloring: &[usize]) -> Option<Packing> {
    let paths = colorful_paths(instance, coloring);
    if paths.is_empty() {
        return None;
    }
    let k = instance.demand();
    let sets: Vec<u32> = paths.keys().copied().collect();
    // level[union] = (previous union, last color set)
    let mut levels: Vec<HashMap<u32, (u32, u32)>> = vec![HashMap::from([(0, (0, 0))])];
    for _ in 0..k {
        let mut next = HashMap::new();
        for &union in levels.last().expect("levels start non-empty").keys() {
            for &s in &sets {
                if union & s == 0 {
                    next.entry(union | s).or_insert((union, s));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        levels.push(next);
    }
    let (&full, _) = levels[k].iter().min_by_key(|(&u, _)| u)?;
    let mut out = Vec::with_capacity(k);
    let mut union = full;
    for level in (1..=k).rev() {
        let (prev, s) = levels[level][&union];
        out.push(paths[&s].clone());
        union = prev;
    }
    out.reverse();
    Some(Packing::new(out))
}

/// For each color set realized by a colorful (A, l)-path, one witness path.
fn colorful_paths(instance: &Instance, coloring: &[usize]) -> HashMap<u32, Path> {
    let ell = instance.path_order();
    let graph = instance.graph();
    let bit = |v: usize| 1u32 << coloring[v];
    // layers[j]: partial paths with j+1 vertices, keyed by (end, colors) -> predecessor.
    let mut layers: Vec<HashMap<(usize, u32), usize>> = Vec::with_capacity(ell);
    let mut first = HashMap::new();
    for s in instance.terminals() {
        first.insert((s, bit(s)), usize::MAX);
    }
    layers.push(first);
    for _ in 1..ell - 1 {
        let mut next = HashMap::new();
        for &(v, colors) in layers.last().expect("non-empty").keys() {
            for &w in graph.neighbors(v) {
                if !instance.is_terminal(w) && colors & bit(w) == 0 {
                    next.entry((w, colors | bit(w))).or_insert(v);
                }
            }
        }
        layers.push(next);
    }
    let mut out: HashMap<u32, Path> = HashMap::new();
    let mut keys: Vec<(usize, u32)> = layers.last().expect("non-empty").keys().copied().collect();
    keys.sort_unstable();
    for (v, colors) in keys {
        for &t in graph.neighbors(v) {
            if !instance.is_terminal(t) || colors & bit(t) != 0 {
                continue;
            }
            let full = colors | bit(t);
            if out.contains_key(&full) {
                continue;
            }
            let mut vs = vec![t, v];
            let (mut cur, mut cur_colors) = (v, colors);
            for layer in (1..layers.len()).rev() {
                let prev = layers[layer][&(cur, cur_colors)];
                cur_colors &= !bit(cur);
                cur = prev;
                vs.push(cur);
            }
            vs.reverse();
            out.insert(full, Path::new(vs));
        }
    }
    out
}
