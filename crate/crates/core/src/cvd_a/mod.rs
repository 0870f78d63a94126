//! Randomized solver parameterized by the number of terminals plus the cluster vertex
//! deletion number.
//!
//! With `M = A ∪ S` (where `G - M` is a cluster graph), each packing path is a sequence of
//! `M`-vertices joined by runs of clique vertices. The solver guesses those sequences, the
//! length class of every run and which runs share a clique, colors the cliques at random to
//! pick one clique per group, and settles the exact run lengths with a small flow problem.

mod guess;
mod program;
mod solver;

pub use guess::{
    enumerate_guesses, requirements_for, Gap, GuessSpace, GuessTuple, LengthClass, Pruning,
};
pub use program::{satisfies, solve_length_program, LengthProgram, LengthVariable};
pub use solver::{
    color_and_select, default_trials_per_guess, feasible_clique, length_program,
    reconstruct_packing, representatives, solve_cvd_a, terminal_modulator, CvdAOptions, CvdARun,
    DEFAULT_GUESS_CAP,
};
