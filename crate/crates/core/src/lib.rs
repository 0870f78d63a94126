//! Packing vertex-disjoint paths of fixed order between terminals.
//!
//! Given a graph, a terminal set `A`, a path order `l` (counted in vertices) and a demand
//! `k`, decide whether `k` vertex-disjoint paths with `l` vertices each and both endpoints
//! in `A` exist.
//!
//! * [`oracle`]: exhaustive search and color coding.
//! * [`kernel_vc`]: a polynomial kernel for vertex cover, built on [`expansion`].
//! * [`cvd_ell`]: cluster vertex deletion set plus path order.
//! * [`cvd_a`]: randomized, cluster vertex deletion set plus the terminals.
//! * [`hardness`]: the reduction from 2-interval independent set.
//! * [`solve`]: one entry point over the solvers.
//!
//! ```
//! use alpp::format::parse_instance;
//! use alpp::solve::{solve, SolveConfig};
//!
//! let inst = parse_instance("p alpp 3 2 1 3\ne 1 2\ne 2 3\na 1 3\n").unwrap();
//! let report = solve(&inst, &SolveConfig::default()).unwrap();
//! assert_eq!(report.answer.label(), "YES");
//! ```

pub mod answer;
pub mod cvd_a;
pub mod cvd_ell;
pub mod error;
pub mod expansion;
pub mod flow;
pub mod format;
pub mod generate;
pub mod graph;
pub mod hardness;
pub mod instance;
pub mod kernel_vc;
pub mod modulator;
pub mod oracle;
pub mod solve;
pub mod trace;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/solvers.md")]
    mod solvers {}
    #[doc = include_str!("../../../book/src/kernel_vc.md")]
    mod kernel_vc {}
    #[doc = include_str!("../../../book/src/cvd_ell.md")]
    mod cvd_ell {}
    #[doc = include_str!("../../../book/src/cvd_a.md")]
    mod cvd_a {}
    #[doc = include_str!("../../../book/src/hardness.md")]
    mod hardness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
