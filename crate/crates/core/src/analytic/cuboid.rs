use std::f64::consts::PI;

use crate::error::{LcError, Result};
use crate::fieldcore::{DirectorField, Grid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// n* = (cos(πz/2d), 0, sin(πz/2d)).
    Smooth,
    /// e1 below a plane z = α, e3 above (α = d/2 is returned).
    Jump,
    /// Exactly at the crossover: both are minimizers.
    Both,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Smooth => "smooth",
            Branch::Jump => "jump",
            Branch::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuboidSolution {
    pub branch: Branch,
    pub k: f64,
    pub height: f64,
    pub l1: f64,
    pub l2: f64,
    pub smooth_energy: f64,
    pub jump_energy: f64,
    /// Energy of the returned branch.
    pub energy: f64,
}

/// K* = π²/(4d): the two branches cost the same.
pub fn cuboid_critical_k(height: f64) -> f64 {
    PI * PI / (4.0 * height)
}

/// Minimizer on (-L1, L1)×(-L2, L2)×(0, d) with n = e1 at z = 0, e3 at z = d, t = 0.
pub fn cuboid_minimizer(k: f64, height: f64, l1: f64, l2: f64) -> Result<CuboidSolution> {
    if !(k > 0.0 && height > 0.0 && l1 > 0.0 && l2 > 0.0) {
        return Err(LcError::Domain("K, height, L1, L2 must be > 0".into()));
    }
    let smooth_energy = PI * PI * l1 * l2 / height;
    let jump_energy = 4.0 * k * l1 * l2;
    let kc = cuboid_critical_k(height);
    let branch = if k > kc {
        Branch::Smooth
    } else if k < kc {
        Branch::Jump
    } else {
        Branch::Both
    };
    let energy = if branch == Branch::Jump { jump_energy } else { smooth_energy };
    Ok(CuboidSolution { branch, k, height, l1, l2, smooth_energy, jump_energy, energy })
}

/// Grid for the cuboid with one strip layer at each z face; strip cell
/// centers sit on z = 0 and z = d, so `dims[2] - 2` cells are free.
pub fn cuboid_grid(dims: [usize; 3], height: f64, l1: f64, l2: f64) -> Result<Grid> {
    if dims[2] < 3 {
        return Err(LcError::Resolution("need at least 3 cells in z".into()));
    }
    let hz = height / (dims[2] - 1) as f64;
    let g = Grid::new(
        dims,
        [2.0 * l1 / dims[0] as f64, 2.0 * l2 / dims[1] as f64, hz],
        [-l1, -l2, -0.5 * hz],
    )?;
    Ok(g.with_strip(2, 1, 1))
}

fn boundary_value(z: f64, height: f64) -> Option<[f64; 3]> {
    let tol = 1e-12 * height;
    if z <= tol {
        Some([1.0, 0.0, 0.0])
    } else if z >= height - tol {
        Some([0.0, 0.0, 1.0])
    } else {
        None
    }
}

pub fn smooth_field(grid: &Grid, height: f64) -> Result<DirectorField> {
    DirectorField::from_fn(grid.clone(), |x| {
        boundary_value(x[2], height).unwrap_or_else(|| {
            let a = PI * x[2] / (2.0 * height);
            [a.cos(), 0.0, a.sin()]
        })
    })
}

/// e1 for z < α, e3 above.
pub fn jump_field(grid: &Grid, height: f64, alpha: f64) -> Result<DirectorField> {
    DirectorField::from_fn(grid.clone(), |x| {
        boundary_value(x[2], height).unwrap_or(if x[2] < alpha { [1.0, 0.0, 0.0] } else { [0.0, 0.0, 1.0] })
    })
}

impl CuboidSolution {
    /// Field of the returned branch (the smooth one at the crossover).
    pub fn field(&self, grid: &Grid) -> Result<DirectorField> {
        match self.branch {
            Branch::Jump => jump_field(grid, self.height, 0.5 * self.height),
            _ => smooth_field(grid, self.height),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{total_energy, ModelParams};

    #[test]
    fn branch_selection() {
        let s = cuboid_minimizer(1.0, 1.0, 0.5, 0.5).unwrap();
        assert_eq!(s.branch, Branch::Jump);
        assert_eq!(s.energy, 1.0);
        let s = cuboid_minimizer(10.0, 1.0, 0.5, 0.5).unwrap();
        assert_eq!(s.branch, Branch::Smooth);
        assert!((s.energy - PI * PI / 4.0).abs() < 1e-15);
        for &h in &[0.5, 1.0, 3.0] {
            let kc = cuboid_critical_k(h);
            let s = cuboid_minimizer(kc, h, 0.7, 0.3).unwrap();
            assert_eq!(s.branch, Branch::Both);
            assert!((s.smooth_energy - s.jump_energy).abs() <= 1e-12);
        }
        assert!(cuboid_minimizer(-1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn strip_layout() {
        let g = cuboid_grid([4, 4, 10], 1.0, 0.5, 0.5).unwrap();
        assert!((g.center(g.index(0, 0, 0))[2]).abs() < 1e-15);
        assert!((g.center(g.index(0, 0, 9))[2] - 1.0).abs() < 1e-15);
        let f = smooth_field(&g, 1.0).unwrap();
        assert_eq!(f.values[g.index(1, 2, 0)], [1.0, 0.0, 0.0]);
        assert_eq!(f.values[g.index(1, 2, 9)], [0.0, 0.0, 1.0]);
        assert_eq!(f.fixed.iter().filter(|&&x| x).count(), 32);
    }

    #[test]
    fn jump_branch_energy_exact() {
        let g = cuboid_grid([6, 6, 12], 1.0, 0.5, 0.5).unwrap();
        let f = jump_field(&g, 1.0, 0.5).unwrap();
        let e = total_energy(&f, &ModelParams::new(0.0, 1.3).unwrap(), None).unwrap();
        assert!((e.total - 1.3).abs() < 1e-12, "{e}");
    }
}
