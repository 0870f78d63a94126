//! Randomized reduction from independent set on 2-interval families to path packing.
//!
//! Each family item becomes a stretch of a long path graph. Four vertices per wanted path are
//! attached to it, and a disjoint selection of `k` items turns into `k` disjoint paths of order
//! `8nN + 4`.

pub mod audit;
pub mod construct;
pub mod family;
pub mod separation;

pub use audit::{structural_audit, AuditCheck, AuditReport};
pub use construct::{
    construct_alpp, default_scale, path_order_for, planted_packing, ConstructionOutput,
    ItemAnchors, Part, Point, PointKind, SpecialVertices, WeightDraw,
};
pub use family::{
    default_epsilon, intersects, parse_family, random_disjoint_selection, random_family,
    serialize_family, Interval, TwoInterval, TwoIntervalFamily,
};
pub use separation::{collision_bound, separation_check, SeparationOutcome};
