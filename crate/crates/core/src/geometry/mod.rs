//! Plane geometry for marked-ruler constructions: primitives, the neusis
//! solver, angle trisection, cubic solving by trisection, and the heptagon.

mod cubic;
mod heptagon;
mod neusis;
mod primitives;
mod scene;
mod trace;
mod trisection;

pub use cubic::{solve_cubic_general, CubicMethod, CubicProblem, CubicSolution};
pub use heptagon::{
    cyclotomic_residual, heptagon_construct, heptagon_cyclotomic_check, heptagon_point_i,
    CyclotomicReport, Heptagon,
    HeptagonPointI,
};
pub use neusis::{solve_neusis, NeusisProblem, NeusisSolution, NEUSIS_SAMPLES};
pub use primitives::{angle_at, Circle, Line, Locus, Point};
pub use scene::Scene;
pub use trace::{ConstructionTrace, SceneObject, Shape, TraceStep};
pub use trisection::{solve_trisection_cubic, trisect_angle, Trisection, TrisectionCubic};

use thiserror::Error;

/// Residual tolerance for lengths and incidences.
pub const GEOMETRIC_TOLERANCE: f64 = 1e-10;
/// Residual tolerance for angles.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("degenerate {0}")]
    Degenerate(&'static str),
    #[error("non-finite input")]
    NonFinite,
    #[error("angle {0} outside (0, π)")]
    AngleOutOfRange(f64),
    #[error("|b| = {0} exceeds 2; the cubic x³ - 3x = b has one real root here")]
    OutsideTrisection(f64),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("step '{step}' failed: residual {residual:e} exceeds {tol:e}")]
    TraceFailed { step: String, residual: f64, tol: f64 },
}
