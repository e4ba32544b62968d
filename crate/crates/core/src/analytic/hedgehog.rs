use std::f64::consts::PI;

use crate::error::{LcError, Result};
use crate::fieldcore::{DirectorField, Grid};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HedgehogSolution {
    pub dim: usize,
    pub k: f64,
    /// Core radius 1/K.
    pub alpha: f64,
    pub energy_formula: f64,
    /// Energy of x/|x| with no core; infinite in 2D.
    pub sobolev_energy: f64,
}

/// Surface area of the unit sphere in R^dim.
pub fn sphere_area(dim: usize) -> f64 {
    match dim {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        d => 2.0 * PI / (d as f64 - 2.0) * sphere_area(d - 2),
    }
}

/// Radial field with an isotropic core of radius 1/K in the unit ball.
///
/// For d ≥ 3 the energy is (d-1)/(d-2)·S - S/((d-2)K^{d-2}), S = |S^{d-1}|;
/// for d = 2 it is 2π(log K + 1).
pub fn hedgehog(k: f64, dim: usize) -> Result<HedgehogSolution> {
    if !(k > 1.0) {
        return Err(LcError::Domain(format!("need K > 1, got {k}")));
    }
    if dim < 2 {
        return Err(LcError::Domain(format!("need dim >= 2, got {dim}")));
    }
    let s = sphere_area(dim);
    let (energy_formula, sobolev_energy) = if dim == 2 {
        (2.0 * PI * (k.ln() + 1.0), f64::INFINITY)
    } else {
        let d = dim as f64;
        let sob = (d - 1.0) / (d - 2.0) * s;
        (sob - s / ((d - 2.0) * k.powi(dim as i32 - 2)), sob)
    };
    Ok(HedgehogSolution { dim, k, alpha: 1.0 / k, energy_formula, sobolev_energy })
}

/// x/|x| outside the core, zero inside; cells outside the unit ball are fixed.
pub fn hedgehog_field(k: f64, dim: usize, grid: &Grid) -> Result<DirectorField> {
    let sol = hedgehog(k, dim)?;
    let planar = grid.dims[2] == 1;
    match (dim, planar) {
        (2, true) | (3, false) => {}
        _ => return Err(LcError::Dimension(format!("dim {dim} does not match grid {:?}", grid.dims))),
    }
    for a in 0..dim {
        let lo = grid.origin[a];
        let hi = lo + grid.spacing[a] * grid.dims[a] as f64;
        if lo > -1.0 || hi < 1.0 {
            return Err(LcError::Domain("grid must cover the unit ball".into()));
        }
        if sol.alpha < 2.0 * grid.spacing[a] {
            return Err(LcError::Resolution(format!(
                "core radius {} below two spacings ({})",
                sol.alpha, grid.spacing[a]
            )));
        }
    }
    let radial = |x: [f64; 3]| if planar { [x[0], x[1], 0.0] } else { x };
    let mut f = DirectorField::from_fn(grid.clone(), |x| {
        let y = radial(x);
        let r = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
        if r < sol.alpha { [0.0; 3] } else { [y[0] / r, y[1] / r, y[2] / r] }
    })?;
    f.fix_where(|x| {
        let y = radial(x);
        y[0] * y[0] + y[1] * y[1] + y[2] * y[2] >= 1.0
    });
    Ok(f)
}

/// |K·(d-1)/α - (d-1)/α²|: curvature balance on the core sphere.
pub fn curvature_jump_residual_at(k: f64, dim: usize, alpha: f64) -> f64 {
    let d1 = dim as f64 - 1.0;
    (k * d1 / alpha - d1 / (alpha * alpha)).abs()
}

pub fn curvature_jump_residual(k: f64, dim: usize) -> f64 {
    curvature_jump_residual_at(k, dim, 1.0 / k)
}
