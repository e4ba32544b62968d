use super::field::{DirectorField, QTensorField, ScalarField};
use super::grid::{Axis, Grid};
use super::jumps::{JumpMask, JumpSet};
use crate::error::Result;
use crate::linalg::{Mat3, Vec3};

/// Difference stencil for one cell and axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stencil {
    /// (v[plus] - v[minus]) / 2h
    Central { minus: usize, plus: usize },
    /// (v[plus] - v[p]) / h
    Forward { plus: usize },
    /// (v[p] - v[minus]) / h
    Backward { minus: usize },
    /// No neighbor reachable: derivative taken as zero.
    None,
}

impl Stencil {
    /// `(cell, coefficient)` pairs so that the derivative is `Σ c·v[cell]`.
    pub fn terms(&self, p: usize, h: f64) -> ([(usize, f64); 2], usize) {
        match *self {
            Stencil::Central { minus, plus } => ([(plus, 0.5 / h), (minus, -0.5 / h)], 2),
            Stencil::Forward { plus } => ([(plus, 1.0 / h), (p, -1.0 / h)], 2),
            Stencil::Backward { minus } => ([(p, 1.0 / h), (minus, -1.0 / h)], 2),
            Stencil::None => ([(p, 0.0), (p, 0.0)], 0),
        }
    }
}

/// Stencil lookup for a grid and a jump set.
#[derive(Clone, Debug)]
pub struct StencilMap<'g> {
    pub grid: &'g Grid,
    pub mask: JumpMask,
}

impl<'g> StencilMap<'g> {
    pub fn new(grid: &'g Grid, jumps: &JumpSet) -> Result<Self> {
        grid.check_same(&jumps.grid)?;
        Ok(StencilMap { grid, mask: jumps.mask() })
    }

    pub fn from_mask(grid: &'g Grid, mask: JumpMask) -> Self {
        StencilMap { grid, mask }
    }

    #[inline]
    pub fn stencil(&self, p: usize, axis: Axis) -> Stencil {
        let plus = self.grid.plus(p, axis).filter(|_| !self.mask.has(p, axis));
        let minus = self.grid.minus(p, axis).filter(|&m| !self.mask.has(m, axis));
        match (minus, plus) {
            (Some(minus), Some(plus)) => Stencil::Central { minus, plus },
            (None, Some(plus)) => Stencil::Forward { plus },
            (Some(minus), None) => Stencil::Backward { minus },
            (None, None) => Stencil::None,
        }
    }

    /// `out[i][a] = ∂_a v_i` at cell `p`.
    #[inline]
    pub fn grad_at<const C: usize>(&self, values: &[[f64; C]], p: usize) -> [[f64; 3]; C] {
        let mut g = [[0.0; 3]; C];
        for a in 0..3 {
            let st = self.stencil(p, a);
            let (terms, n) = st.terms(p, self.grid.spacing[a]);
            for &(q, c) in &terms[..n] {
                for i in 0..C {
                    g[i][a] += c * values[q][i];
                }
            }
        }
        g
    }
}

/// Per-cell gradient of a C-component field.
pub fn gradient_with<const C: usize>(
    grid: &Grid,
    values: &[[f64; C]],
    jumps: &JumpSet,
) -> Result<Vec<[[f64; 3]; C]>> {
    let map = StencilMap::new(grid, jumps)?;
    Ok((0..grid.len()).map(|p| map.grad_at(values, p)).collect())
}

pub fn gradient_director(field: &DirectorField, jumps: &JumpSet) -> Result<Vec<Mat3>> {
    gradient_with(&field.grid, &field.values, jumps)
}

pub fn gradient_scalar(field: &ScalarField, jumps: &JumpSet) -> Result<Vec<Vec3>> {
    let vals: Vec<[f64; 1]> = field.values.iter().map(|&s| [s]).collect();
    Ok(gradient_with(&field.grid, &vals, jumps)?.into_iter().map(|g| g[0]).collect())
}

pub fn gradient_qtensor(field: &QTensorField, jumps: &JumpSet) -> Result<Vec<[[f64; 3]; 5]>> {
    gradient_with(&field.grid, &field.values, jumps)
}
