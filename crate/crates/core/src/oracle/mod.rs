//! Ground-truth solvers: exhaustive search over the path catalog, and color coding.

mod catalog;
mod color_coding;
mod exact;

pub use catalog::{enumerate_a_paths, PathCatalog, DEFAULT_CATALOG_CAP};
pub use color_coding::{
    colorful_packing, default_trials, solve_color_coding, ColorCodingRun, DEFAULT_WIDTH_CAP,
};
pub use exact::{solve_exact, solve_exact_with_cap};
