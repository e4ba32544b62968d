//! Combing a line field into a vector field.
//!
//! Signs are propagated breadth-first across faces; every facet where the
//! chosen representatives end up antipodal becomes a jump. A field is
//! orientable exactly when no such facet remains.

use std::collections::VecDeque;

use crate::error::{LcError, Result};
use crate::fieldcore::{DirectorField, Grid, JumpSet, ZERO_TOL};
use crate::linalg::{dot, norm, Vec3};

/// Unit vectors modulo sign (zero for isotropic cells).
#[derive(Clone, Debug, PartialEq)]
pub struct LineField {
    pub grid: Grid,
    pub values: Vec<Vec3>,
}

impl LineField {
    pub fn new(grid: Grid, values: Vec<Vec3>) -> Result<Self> {
        // Same invariant as a director field.
        let f = DirectorField::new(grid, values)?;
        Ok(LineField { grid: f.grid, values: f.values })
    }

    pub fn is_zero(&self, idx: usize) -> bool {
        norm(self.values[idx]) <= ZERO_TOL
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CombResult {
    pub field: DirectorField,
    pub jumps: JumpSet,
    pub orientable: bool,
    pub visited_components: usize,
}

const NEIGHBOR_ORDER: [(usize, bool); 6] = [(0, false), (0, true), (1, false), (1, true), (2, false), (2, true)];

fn neighbor(grid: &Grid, p: usize, axis: usize, plus: bool) -> Option<usize> {
    if plus { grid.plus(p, axis) } else { grid.minus(p, axis) }
}

fn neg(v: Vec3) -> Vec3 {
    [-v[0], -v[1], -v[2]]
}

/// Largest-magnitude component made positive; breaks exact ties in a way
/// that does not depend on the stored representative.
fn canonical(v: Vec3) -> Vec3 {
    let mut k = 0;
    for i in 1..3 {
        if v[i].abs() > v[k].abs() {
            k = i;
        }
    }
    if v[k] < 0.0 { neg(v) } else { v }
}

fn antipodal_jumps(field: &DirectorField) -> JumpSet {
    let grid = &field.grid;
    let mut js = JumpSet::new(grid.clone());
    for p in 0..grid.len() {
        if field.is_zero(p) {
            continue;
        }
        for a in 0..3 {
            if let Some(q) = grid.plus(p, a) {
                if !field.is_zero(q) && dot(field.values[p], field.values[q]) < 0.0 {
                    js.insert(p, a, [field.values[p], field.values[q]]).expect("facet in grid");
                }
            }
        }
    }
    js
}

/// Breadth-first combing, one seed (the smallest flat index) per connected
/// nonzero component, neighbors visited in the order -x, +x, -y, +y, -z, +z.
/// Seeds take the canonical sign, so the result depends only on n⊗n.
pub fn comb(lf: &LineField) -> CombResult {
    let grid = &lf.grid;
    let n = grid.len();
    let mut out = lf.values.clone();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut queue = VecDeque::new();
    for seed in 0..n {
        if seen[seed] || lf.is_zero(seed) {
            continue;
        }
        components += 1;
        seen[seed] = true;
        out[seed] = canonical(lf.values[seed]);
        queue.push_back(seed);
        while let Some(p) = queue.pop_front() {
            for &(axis, plus) in &NEIGHBOR_ORDER {
                let Some(q) = neighbor(grid, p, axis, plus) else { continue };
                if seen[q] || lf.is_zero(q) {
                    continue;
                }
                seen[q] = true;
                let v = lf.values[q];
                let d = dot(out[p], v);
                out[q] = if d > 0.0 {
                    v
                } else if d < 0.0 {
                    neg(v)
                } else {
                    canonical(v)
                };
                queue.push_back(q);
            }
        }
    }
    let mut field = DirectorField::unchecked(grid.clone(), out).expect("same grid");
    field.fixed = vec![false; n];
    let jumps = antipodal_jumps(&field);
    CombResult { orientable: jumps.is_empty(), field, jumps, visited_components: components }
}

/// Greedy sign flips that strictly reduce the number of antipodal facets
/// around a cell; at most `passes` sweeps in flat-index order.
pub fn improve_jumps(r: &CombResult, passes: usize) -> CombResult {
    let grid = &r.field.grid;
    let mut vals = r.field.values.clone();
    let is_zero = |v: Vec3| norm(v) <= ZERO_TOL;
    for _ in 0..passes {
        let mut flipped = false;
        for p in 0..grid.len() {
            if is_zero(vals[p]) {
                continue;
            }
            let (mut bad, mut good) = (0, 0);
            for &(axis, plus) in &NEIGHBOR_ORDER {
                let Some(q) = neighbor(grid, p, axis, plus) else { continue };
                if is_zero(vals[q]) {
                    continue;
                }
                let d = dot(vals[p], vals[q]);
                if d < 0.0 {
                    bad += 1;
                } else if d > 0.0 {
                    good += 1;
                }
            }
            if good < bad {
                vals[p] = neg(vals[p]);
                flipped = true;
            }
        }
        if !flipped {
            break;
        }
    }
    let mut field = DirectorField::unchecked(grid.clone(), vals).expect("same grid");
    field.fixed = r.field.fixed.clone();
    let jumps = antipodal_jumps(&field);
    CombResult { orientable: jumps.is_empty(), field, jumps, visited_components: r.visited_components }
}

/// Planar defect of charge k/2 about `center`: director angle
/// (k/2)·atan2(y - c_y, x - c_x), zero within one spacing of the center.
pub fn synth_defect(grid: &Grid, k: i32, center: [f64; 2]) -> Result<LineField> {
    if grid.dims[2] != 1 {
        return Err(LcError::Unsupported("synth_defect needs a 2D grid (nz = 1)".into()));
    }
    let h = grid.spacing[0].max(grid.spacing[1]);
    let values = (0..grid.len())
        .map(|i| {
            let c = grid.center(i);
            let (dx, dy) = (c[0] - center[0], c[1] - center[1]);
            if k != 0 && dx.hypot(dy) <= h {
                return [0.0; 3];
            }
            let phi = 0.5 * k as f64 * dy.atan2(dx);
            [phi.cos(), phi.sin(), 0.0]
        })
        .collect();
    LineField::new(grid.clone(), values)
}
