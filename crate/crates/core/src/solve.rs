//! One entry point over all solvers.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::answer::Answer;
use crate::cvd_a::{solve_cvd_a, CvdAOptions, DEFAULT_GUESS_CAP};
use crate::cvd_ell::solve_cvd_ell;
use crate::error::{Error, Result};
use crate::instance::{Instance, ModulatorKind};
use crate::modulator::cvd_modulator_bounded;
use crate::oracle::{
    default_trials, solve_color_coding, solve_exact_with_cap, DEFAULT_CATALOG_CAP,
    DEFAULT_WIDTH_CAP,
};

/// Failure probability the color-coding default trial count aims for.
pub const COLOR_CODING_FAILURE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Auto,
    Oracle,
    ColorCode,
    CvdEll,
    CvdA,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Oracle,
        Strategy::ColorCode,
        Strategy::CvdEll,
        Strategy::CvdA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Oracle => "oracle",
            Strategy::ColorCode => "colorcode",
            Strategy::CvdEll => "cvd-ell",
            Strategy::CvdA => "cvd-a",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Strategy::Auto,
            Strategy::Oracle,
            Strategy::ColorCode,
            Strategy::CvdEll,
            Strategy::CvdA,
        ]
        .into_iter()
        .find(|st| st.name() == s)
        .ok_or_else(|| Error::Precondition(format!("unknown strategy `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub strategy: Strategy,
    pub seed: u64,
    /// Trials for the randomized solvers; `None` picks their defaults.
    pub trials: Option<usize>,
    pub catalog_cap: usize,
    pub guess_cap: usize,
    pub width_cap: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            strategy: Strategy::Auto,
            seed: 0,
            trials: None,
            catalog_cap: DEFAULT_CATALOG_CAP,
            guess_cap: DEFAULT_GUESS_CAP,
            width_cap: DEFAULT_WIDTH_CAP,
        }
    }
}

/// Instances up to this many vertices go to the exact solver under `auto`.
pub const AUTO_ORACLE_VERTICES: usize = 14;
/// Largest cluster deletion set `auto` looks for.
pub const AUTO_CVD_CAP: usize = 3;
/// Largest path order `auto` hands to the cvd+ℓ pipeline.
pub const AUTO_CVD_ELL_ORDER: usize = 6;

/// Picks a concrete strategy for `instance`.
pub fn choose_strategy(instance: &Instance, config: &SolveConfig) -> Strategy {
    if config.strategy != Strategy::Auto {
        return config.strategy;
    }
    if instance.vertex_count() <= AUTO_ORACLE_VERTICES {
        return Strategy::Oracle;
    }
    let cvd = match instance.modulator() {
        Some(m) if m.kind == ModulatorKind::Cvd && m.vertices.len() <= AUTO_CVD_CAP => {
            Some(m.vertices.len())
        }
        _ => cvd_modulator_bounded(instance.graph(), &[], AUTO_CVD_CAP).map(|m| m.len()),
    };
    if cvd.is_some() && instance.path_order() <= AUTO_CVD_ELL_ORDER {
        return Strategy::CvdEll;
    }
    let terminals = instance.terminals();
    let room = config.guess_cap.saturating_sub(terminals.len());
    if terminals.len() <= config.guess_cap
        && cvd_modulator_bounded(instance.graph(), &terminals, room.min(AUTO_CVD_CAP)).is_some()
    {
        return Strategy::CvdA;
    }
    Strategy::ColorCode
}

/// What a solve produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub answer: Answer,
    pub strategy: Strategy,
    pub trace_len: usize,
    /// Random trials spent, for the randomized strategies.
    pub trials_used: usize,
    pub elapsed: Duration,
}

pub fn solve(instance: &Instance, config: &SolveConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let strategy = choose_strategy(instance, config);
    let (answer, trace_len, trials_used) = match strategy {
        Strategy::Auto => unreachable!("choose_strategy never returns auto"),
        Strategy::Oracle => (solve_exact_with_cap(instance, config.catalog_cap)?, 0, 0),
        Strategy::ColorCode => {
            let width = instance.demand() * instance.path_order();
            let trials = config.trials.unwrap_or_else(|| {
                default_trials(width.min(config.width_cap), COLOR_CODING_FAILURE)
            });
            let run = solve_color_coding(instance, trials, config.seed, config.width_cap)?;
            (run.answer, 0, run.trials_used)
        }
        Strategy::CvdEll => {
            let run = solve_cvd_ell(instance, config.catalog_cap)?;
            (run.answer, run.trace.len(), 0)
        }
        Strategy::CvdA => {
            let opts = CvdAOptions {
                trials: config.trials,
                seed: config.seed,
                guess_cap: config.guess_cap,
            };
            let run = solve_cvd_a(instance, &opts)?;
            (run.answer, run.guesses, run.trials_used)
        }
    };
    Ok(SolveReport {
        answer,
        strategy,
        trace_len,
        trials_used,
        elapsed: start.elapsed(),
    })
}
