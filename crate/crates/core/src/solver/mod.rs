//! Discrete SBV relaxation and Euler–Lagrange diagnostics.

mod discrete;
mod relax;
mod residual;

pub use discrete::{energy_gradient, gradient_check};
pub use relax::{log_csv, relax, RelaxLogEntry, RelaxOutcome, RelaxParams};
pub use residual::{el_residual, natural_bc_residual, natural_bc_residual_with, FacetResidual, ResidualStats, NORMAL_RADIUS_CELLS};

use crate::linalg::{norm, scale, Vec3};

/// v/|v| if |v| > 1/2, else 0. Vectors already unit to rounding are
/// returned as is, which makes the map idempotent.
pub fn project_s2_or_zero(v: Vec3) -> Vec3 {
    let r = norm(v);
    if (r - 1.0).abs() <= 4.0 * f64::EPSILON {
        v
    } else if r > 0.5 {
        scale(v, 1.0 / r)
    } else {
        [0.0; 3]
    }
}
