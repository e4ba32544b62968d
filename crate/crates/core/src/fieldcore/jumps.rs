use std::collections::BTreeMap;

use super::field::DirectorField;
use super::grid::{facet_area, Axis, Grid};
use super::measure::{JumpMeasure, NormalWeighted};
use crate::error::{LcError, Result};
use crate::linalg::{dot, norm, Vec3};

pub const DEFAULT_ANGLE_THRESHOLD: f64 = std::f64::consts::FRAC_PI_3;

/// The facet between `cell` and its neighbor in the positive `axis` direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub cell: usize,
    pub axis: Axis,
}

/// Set of jump facets with their one-sided traces `(v⁻, v⁺)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpSet {
    pub grid: Grid,
    facets: BTreeMap<Facet, [Vec3; 2]>,
}

impl JumpSet {
    pub fn new(grid: Grid) -> Self {
        JumpSet { grid, facets: BTreeMap::new() }
    }

    /// Adds a facet; returns false if it was already present.
    pub fn insert(&mut self, cell: usize, axis: Axis, traces: [Vec3; 2]) -> Result<bool> {
        if axis > 2 || cell >= self.grid.len() || self.grid.plus(cell, axis).is_none() {
            return Err(LcError::Domain(format!("no facet at cell {cell} axis {axis}")));
        }
        Ok(self.facets.insert(Facet { cell, axis }, traces).is_none())
    }

    /// Adds a facet taking the traces from `field`.
    pub fn insert_from(&mut self, field: &DirectorField, cell: usize, axis: Axis) -> Result<bool> {
        let q = self
            .grid
            .plus(cell, axis)
            .ok_or_else(|| LcError::Domain(format!("no facet at cell {cell} axis {axis}")))?;
        self.insert(cell, axis, [field.values[cell], field.values[q]])
    }

    pub fn remove(&mut self, cell: usize, axis: Axis) -> bool {
        self.facets.remove(&Facet { cell, axis }).is_some()
    }

    #[inline]
    pub fn contains(&self, cell: usize, axis: Axis) -> bool {
        self.facets.contains_key(&Facet { cell, axis })
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Facets in (cell, axis) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Facet, &[Vec3; 2])> {
        self.facets.iter()
    }

    pub fn facets(&self) -> impl Iterator<Item = Facet> + '_ {
        self.facets.keys().copied()
    }

    /// Surface measure of the jump set (normal-weighted facet areas).
    pub fn area(&self) -> f64 {
        NormalWeighted::default().area(self)
    }

    /// Plain sum of facet areas.
    pub fn raw_area(&self) -> f64 {
        self.facets.keys().map(|f| facet_area(&self.grid, f.axis)).sum()
    }

    /// Dense per-cell bitmask for fast stencil lookups.
    pub fn mask(&self) -> JumpMask {
        let mut bits = vec![0u8; self.grid.len()];
        for f in self.facets.keys() {
            bits[f.cell] |= 1 << f.axis;
        }
        JumpMask { bits }
    }

    /// Refreshes stored traces from `field`.
    pub fn retrace(&mut self, field: &DirectorField) {
        for (f, tr) in self.facets.iter_mut() {
            let q = self.grid.plus(f.cell, f.axis).expect("facet has a neighbor");
            *tr = [field.values[f.cell], field.values[q]];
        }
    }
}

/// Bit `a` of `bits[cell]` is set when the facet `(cell, a)` is a jump.
#[derive(Clone, Debug)]
pub struct JumpMask {
    pub bits: Vec<u8>,
}

impl JumpMask {
    pub fn empty(n: usize) -> Self {
        JumpMask { bits: vec![0; n] }
    }

    #[inline]
    pub fn has(&self, cell: usize, axis: Axis) -> bool {
        self.bits[cell] & (1 << axis) != 0
    }

    #[inline]
    pub fn set(&mut self, cell: usize, axis: Axis, on: bool) {
        if on {
            self.bits[cell] |= 1 << axis;
        } else {
            self.bits[cell] &= !(1 << axis);
        }
    }
}

/// Facets where one side is zero and the other not, or where both sides are
/// nonzero and meet at an angle above `angle_threshold`.
pub fn detect_jumps(field: &DirectorField, angle_threshold: f64) -> Result<JumpSet> {
    if !(angle_threshold > 0.0 && angle_threshold < std::f64::consts::PI) {
        return Err(LcError::Domain(format!("angle threshold {angle_threshold} outside (0, π)")));
    }
    let grid = &field.grid;
    let cos_thr = angle_threshold.cos();
    let mut js = JumpSet::new(grid.clone());
    for p in 0..grid.len() {
        let vp = field.values[p];
        let zp = field.is_zero(p);
        for a in 0..3 {
            let Some(q) = grid.plus(p, a) else { continue };
            let vq = field.values[q];
            let zq = field.is_zero(q);
            let jump = if zp != zq {
                true
            } else if zp {
                false
            } else {
                let c = dot(vp, vq) / (norm(vp) * norm(vq));
                c < cos_thr
            };
            if jump {
                js.facets.insert(Facet { cell: p, axis: a }, [vp, vq]);
            }
        }
    }
    Ok(js)
}
