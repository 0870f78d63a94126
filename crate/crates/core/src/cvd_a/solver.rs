use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::guess::{enumerate_guesses, GuessSpace, GuessTuple, LengthClass, Pruning};
use super::program::{solve_length_program, LengthProgram, LengthVariable};
use crate::answer::Answer;
use crate::error::{Error, Result};
use crate::flow::bipartite_matching;
use crate::graph::Graph;
use crate::instance::{validate_packing, Instance, ModulatorKind, Packing, Path};
use crate::modulator::{cluster_decomposition, cvd_modulator};

/// Default cap on `|M|` for the guessing phase.
pub const DEFAULT_GUESS_CAP: usize = 8;

/// Distinct representatives for `requirements` inside `clique`: entry `i` is a clique vertex
/// adjacent to every member of `requirements[i]`, all entries distinct. `None` if impossible.
pub fn representatives(
    clique: &[usize],
    requirements: &[Vec<usize>],
    graph: &Graph,
) -> Option<Vec<usize>> {
    let adjacency: Vec<Vec<usize>> = requirements
        .iter()
        .map(|set| {
            (0..clique.len())
                .filter(|&i| set.iter().all(|&m| graph.has_edge(m, clique[i])))
                .collect()
        })
        .collect();
    bipartite_matching(&adjacency, clique.len())
        .into_iter()
        .map(|slot| slot.map(|i| clique[i]))
        .collect()
}

/// Whether `clique` can supply distinct vertices, each adjacent to all of a different set of
/// `requirements`.
pub fn feasible_clique(clique: &[usize], requirements: &[Vec<usize>], graph: &Graph) -> bool {
    representatives(clique, requirements, graph).is_some()
}

/// For each color `0..parts`, the largest clique of that color in the corresponding
/// candidate list (ties to the lowest clique index). `None` when a color has no candidate.
pub fn color_and_select(
    cliques: &[Vec<usize>],
    colors: &[usize],
    candidates: &[Vec<bool>],
) -> Option<Vec<usize>> {
    candidates
        .iter()
        .enumerate()
        .map(|(color, ok)| {
            (0..cliques.len())
                .filter(|&q| colors[q] == color && ok[q])
                .max_by_key(|&q| (cliques[q].len(), std::cmp::Reverse(q)))
        })
        .collect()
}

/// Builds the program of `guess` once each part has its clique.
pub fn length_program(
    guess: &GuessTuple,
    chosen: &[usize],
    cliques: &[Vec<usize>],
    ell: usize,
) -> LengthProgram {
    let mut part_of = vec![usize::MAX; guess.gaps.len()];
    for (p, part) in guess.parts.iter().enumerate() {
        for &g in part {
            part_of[g] = p;
        }
    }
    let variables = (0..guess.gaps.len())
        .filter(|&g| guess.length_class[g] != LengthClass::Zero)
        .map(|g| LengthVariable {
            path_group: guess.gaps[g].sequence,
            clique_group: part_of[g],
            lower: guess.length_class[g].lower_bound(),
            fixed: guess.length_class[g] == LengthClass::One,
        })
        .collect();
    LengthProgram {
        variables,
        path_targets: (0..guess.sequences.len())
            .map(|s| guess.path_target(ell, s))
            .collect(),
        clique_capacities: chosen.iter().map(|&q| cliques[q].len()).collect(),
    }
}

/// Turns a solved program into concrete paths.
///
/// `lengths` holds one value per non-zero gap, in gap order.
pub fn reconstruct_packing(
    guess: &GuessTuple,
    chosen: &[usize],
    cliques: &[Vec<usize>],
    lengths: &[usize],
    graph: &Graph,
) -> Result<Packing> {
    // Per gap: the clique vertices placed between its two modulator vertices.
    let mut fill: Vec<Vec<usize>> = vec![Vec::new(); guess.gaps.len()];
    let mut length_of = vec![0; guess.gaps.len()];
    let open = (0..guess.gaps.len()).filter(|&g| guess.length_class[g] != LengthClass::Zero);
    for (g, &x) in open.zip(lengths) {
        length_of[g] = x;
    }
    for (p, part) in guess.parts.iter().enumerate() {
        let clique = &cliques[chosen[p]];
        let reps = representatives(clique, &guess.requirements[p], graph)
            .ok_or_else(|| Error::Internal("chosen clique lost its representatives".into()))?;
        let mut spare = clique.iter().copied().filter(|v| !reps.contains(v));
        let mut next_rep = reps.iter().copied();
        for &g in part {
            match guess.length_class[g] {
                LengthClass::Zero => {}
                LengthClass::One => {
                    fill[g].push(next_rep.next().expect("one rep per class-one gap"))
                }
                LengthClass::More => {
                    let head = next_rep.next().expect("head rep");
                    let tail = next_rep.next().expect("tail rep");
                    fill[g].push(head);
                    for _ in 2..length_of[g] {
                        let v = spare.next().ok_or_else(|| {
                            Error::Internal("clique ran out of filler vertices".into())
                        })?;
                        fill[g].push(v);
                    }
                    fill[g].push(tail);
                }
            }
        }
    }
    let mut paths = Vec::with_capacity(guess.sequences.len());
    for (s, seq) in guess.sequences.iter().enumerate() {
        let mut vs = vec![seq[0]];
        for (g, gap) in guess
            .gaps
            .iter()
            .enumerate()
            .filter(|(_, gap)| gap.sequence == s)
        {
            vs.extend_from_slice(&fill[g]);
            vs.push(gap.to);
        }
        paths.push(Path::new(vs));
    }
    Ok(Packing::new(paths))
}

/// Trials per guess with `parts` parts so that a fixed good coloring shows up with probability
/// at least `1 - failure`: one trial when there is at most one part, otherwise
/// `⌈e^parts · ln(1/failure)⌉`.
pub fn default_trials_per_guess(parts: usize, failure: f64) -> usize {
    if parts <= 1 {
        1
    } else {
        ((parts as f64).exp() * (1.0 / failure).ln()).ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvdAOptions {
    /// Colorings per guess; `None` uses [`default_trials_per_guess`] with 1% failure.
    pub trials: Option<usize>,
    pub seed: u64,
    pub guess_cap: usize,
}

impl Default for CvdAOptions {
    fn default() -> Self {
        CvdAOptions {
            trials: None,
            seed: 0,
            guess_cap: DEFAULT_GUESS_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvdARun {
    pub answer: Answer,
    pub guesses: usize,
    pub trials_used: usize,
    /// The modulator `M ⊇ A` that was used, sorted.
    pub modulator: Vec<usize>,
}

/// `A ∪ S` for a cluster deletion set `S` of `G - A`: the declared one if present, otherwise a
/// minimum one.
pub fn terminal_modulator(instance: &Instance) -> Vec<usize> {
    let terminals = instance.terminals();
    let s = match instance.modulator() {
        Some(m) if m.kind != ModulatorKind::VertexCover => m.vertices.clone(),
        _ => cvd_modulator(instance.graph(), &terminals),
    };
    let mut m: Vec<usize> = terminals.into_iter().chain(s).collect();
    m.sort_unstable();
    m.dedup();
    m
}

/// One-sided randomized solver parameterized by `|A|` plus the cluster deletion number.
///
/// Every guess of how a packing meets `M` is tried with several random colorings of the
/// cliques; each success is rebuilt into paths and validated before it is returned.
pub fn solve_cvd_a(instance: &Instance, options: &CvdAOptions) -> Result<CvdARun> {
    let k = instance.demand();
    let modulator = if k == 0 {
        Vec::new()
    } else {
        terminal_modulator(instance)
    };
    let mut run = CvdARun {
        answer: Answer::NoProbable,
        guesses: 0,
        trials_used: 0,
        modulator,
    };
    if k == 0 {
        run.answer = Answer::Yes(Packing::default());
        return Ok(run);
    }
    if run.modulator.len() > options.guess_cap {
        return Err(Error::TooLarge(format!(
            "modulator has {} vertices, guess cap is {}",
            run.modulator.len(),
            options.guess_cap
        )));
    }
    if 2 * k > instance.terminal_count() {
        run.answer = Answer::No;
        return Ok(run);
    }
    let graph = instance.graph();
    let cliques = cluster_decomposition(graph, &run.modulator)?;
    let ell = instance.path_order();
    let space = GuessSpace {
        graph,
        modulator: &run.modulator,
        is_terminal: instance.terminal_mask(),
        path_order: ell,
        demand: k,
    };
    let pruning = Pruning {
        graph,
        cliques: &cliques,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut failure: Option<Error> = None;
    let mut found: Option<Packing> = None;
    let mut guesses = 0;
    let mut trials_used = 0;
    let _ = enumerate_guesses(&space, Some(&pruning), |guess| {
        guesses += 1;
        let x = guess.parts.len();
        if x > cliques.len() {
            return ControlFlow::Continue(());
        }
        let candidates: Vec<Vec<bool>> = guess
            .parts
            .iter()
            .zip(&guess.requirements)
            .map(|(part, req)| {
                let low: usize = part
                    .iter()
                    .map(|&g| guess.length_class[g].lower_bound())
                    .sum();
                cliques
                    .iter()
                    .map(|q| q.len() >= low && feasible_clique(q, req, graph))
                    .collect()
            })
            .collect();
        if candidates.iter().any(|c| !c.contains(&true)) {
            return ControlFlow::Continue(());
        }
        let trials = options
            .trials
            .unwrap_or_else(|| default_trials_per_guess(x, 0.01));
        let mut colors = vec![0; cliques.len()];
        for _ in 0..trials {
            trials_used += 1;
            for c in colors.iter_mut() {
                *c = if x <= 1 { 0 } else { rng.gen_range(0..x) };
            }
            let Some(chosen) = color_and_select(&cliques, &colors, &candidates) else {
                continue;
            };
            let program = length_program(guess, &chosen, &cliques, ell);
            let lengths = match solve_length_program(&program) {
                Ok(Some(lengths)) => lengths,
                Ok(None) => continue,
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            };
            match reconstruct_packing(guess, &chosen, &cliques, &lengths, graph) {
                Ok(packing) => {
                    found = Some(packing);
                    return ControlFlow::Break(());
                }
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    run.guesses = guesses;
    run.trials_used = trials_used;
    if let Some(e) = failure {
        return Err(e);
    }
    if let Some(packing) = found {
        let report = validate_packing(instance, &packing);
        if !report.is_ok() {
            return Err(Error::Internal(format!(
                "reconstructed packing is invalid: {}",
                report.violations[0]
            )));
        }
        run.answer = Answer::Yes(packing);
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_are_distinct() {
        // m1 = 0 sees only clique vertex 1.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(feasible_clique(&[1, 2, 3], &[], &g));
        assert!(feasible_clique(&[1, 2, 3], &[vec![0]], &g));
        assert!(!feasible_clique(&[1, 2, 3], &[vec![0], vec![0]], &g));
    }

    #[test]
    fn pair_requirement() {
        // Only vertex 2 sees both 0 and 1.
        let g = Graph::from_edges(5, [(0, 2), (1, 2), (0, 3), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(feasible_clique(&[2, 3, 4], &[vec![0, 1]], &g));
    }

    #[test]
    fn selection() {
        let cliques = vec![vec![0], vec![1, 2], vec![3, 4]];
        let all = vec![vec![true; 3]];
        assert_eq!(color_and_select(&cliques, &[0, 0, 0], &all), Some(vec![1]));
        let two = vec![vec![true; 1], vec![true; 1]];
        assert_eq!(color_and_select(&cliques[..1], &[0], &two), None);
    }

    #[test]
    fn trivial_cases() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(g, [0, 2], 3, 0, None).unwrap();
        assert!(solve_cvd_a(&inst, &CvdAOptions::default())
            .unwrap()
            .answer
            .is_yes());
        let run = solve_cvd_a(&inst.with_demand(1), &CvdAOptions::default()).unwrap();
        assert!(validate_packing(&inst.with_demand(1), run.answer.packing().unwrap()).is_ok());
    }

    #[test]
    fn long_gap_through_a_clique() {
        // Terminals 0 and 5, clique {1,2,3,4}; 0 sees 1, 5 sees 4. l = 6 forces all four.
        let mut edges = vec![(0, 1), (4, 5)];
        for u in 1..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(6, edges).unwrap();
        let inst = Instance::new(g, [0, 5], 6, 1, None).unwrap();
        let run = solve_cvd_a(&inst, &CvdAOptions::default()).unwrap();
        let packing = run.answer.packing().expect("YES");
        assert_eq!(packing.paths[0].len(), 6);
        let longer = Instance::new(inst.graph().clone(), [0, 5], 7, 1, None).unwrap();
        assert_eq!(
            solve_cvd_a(&longer, &CvdAOptions::default())
                .unwrap()
                .answer,
            Answer::NoProbable
        );
    }
}
