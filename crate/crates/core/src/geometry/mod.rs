//! Equations for coverings: quadrics in `P(R)`, the trace-zero matrix map
//! and the plane model in `P^{n-1}`.

mod descend;
mod plane;
mod points;
mod quadrics;

pub use descend::{descend, Check, DescentOutput, DescentReport};
pub use plane::{cubic_monomials, interpolate_plane_curve, Interpolation, PlaneCurveEquation};
pub use points::{extract_point, g_eval, lambda_eval};
pub use quadrics::{quadrics_for_c, quadrics_for_e, QuadricSystem};
