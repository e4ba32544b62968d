use crate::error::{LcError, Result};
use crate::linalg::Vec3;

pub type Axis = usize;

/// Cell-centered box grid. Cell `(i, j, k)` has its center at
/// `origin + (i + ½, j + ½, k + ½)·spacing`; the flat index is x-fastest.
///
/// `strip[a][0]` / `strip[a][1]` count the cells at the low / high face of
/// axis `a` that hold fixed boundary data.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub dims: [usize; 3],
    pub spacing: Vec3,
    pub origin: Vec3,
    pub strip: [[usize; 2]; 3],
}

impl Grid {
    pub fn new(dims: [usize; 3], spacing: Vec3, origin: Vec3) -> Result<Self> {
        if dims.contains(&0) {
            return Err(LcError::Domain(format!("grid dims must be >= 1, got {dims:?}")));
        }
        if spacing.iter().any(|&h| !(h > 0.0) || !h.is_finite()) {
            return Err(LcError::Domain(format!("grid spacing must be > 0, got {spacing:?}")));
        }
        Ok(Grid { dims, spacing, origin, strip: [[0; 2]; 3] })
    }

    /// Grid covering the box `[lo, hi]` with the given cell counts.
    pub fn boxed(dims: [usize; 3], lo: Vec3, hi: Vec3) -> Result<Self> {
        let mut h = [0.0; 3];
        for a in 0..3 {
            if dims[a] == 0 {
                return Err(LcError::Domain("grid dims must be >= 1".into()));
            }
            h[a] = (hi[a] - lo[a]) / dims[a] as f64;
        }
        Grid::new(dims, h, lo)
    }

    pub fn with_strip(mut self, axis: Axis, low: usize, high: usize) -> Self {
        self.strip[axis] = [low, high];
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.dims[0] * (j + self.dims[1] * k)
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let i = idx % self.dims[0];
        let r = idx / self.dims[0];
        [i, r % self.dims[1], r / self.dims[1]]
    }

    #[inline]
    pub fn center(&self, idx: usize) -> Vec3 {
        let c = self.coords(idx);
        [
            self.origin[0] + (c[0] as f64 + 0.5) * self.spacing[0],
            self.origin[1] + (c[1] as f64 + 0.5) * self.spacing[1],
            self.origin[2] + (c[2] as f64 + 0.5) * self.spacing[2],
        ]
    }

    /// Stride of the flat index along `axis`.
    #[inline]
    pub fn stride(&self, axis: Axis) -> usize {
        match axis {
            0 => 1,
            1 => self.dims[0],
            _ => self.dims[0] * self.dims[1],
        }
    }

    /// Neighbor in the positive direction of `axis`, if inside the grid.
    #[inline]
    pub fn plus(&self, idx: usize, axis: Axis) -> Option<usize> {
        let c = self.coords(idx)[axis];
        (c + 1 < self.dims[axis]).then(|| idx + self.stride(axis))
    }

    #[inline]
    pub fn minus(&self, idx: usize, axis: Axis) -> Option<usize> {
        let c = self.coords(idx)[axis];
        (c > 0).then(|| idx - self.stride(axis))
    }

    /// Axes along which the grid has more than one cell.
    pub fn active_axes(&self) -> Vec<Axis> {
        (0..3).filter(|&a| self.dims[a] > 1).collect()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing[0] * self.spacing[1] * self.spacing[2]
    }

    pub fn facet_area(&self, axis: Axis) -> f64 {
        facet_area(self, axis)
    }

    /// True when the cell lies in a boundary strip.
    pub fn in_strip(&self, idx: usize) -> bool {
        let c = self.coords(idx);
        (0..3).any(|a| c[a] < self.strip[a][0] || c[a] + self.strip[a][1] >= self.dims[a])
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.dims == other.dims && self.spacing == other.spacing && self.origin == other.origin
    }

    pub fn check_same(&self, other: &Grid) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(LcError::Dimension(format!(
                "grids differ: {:?}/{:?} vs {:?}/{:?}",
                self.dims, self.spacing, other.dims, other.spacing
            )))
        }
    }
}

/// Area of the facet normal to `axis`: product of the two transverse spacings.
pub fn facet_area(grid: &Grid, axis: Axis) -> f64 {
    let h = grid.spacing;
    match axis {
        0 => h[1] * h[2],
        1 => h[0] * h[2],
        _ => h[0] * h[1],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facet_areas() {
        let g = Grid::new([2, 2, 2], [1.0; 3], [0.0; 3]).unwrap();
        assert_eq!(facet_area(&g, 2), 1.0);
        let g = Grid::new([2, 2, 2], [0.5, 0.25, 1.0], [0.0; 3]).unwrap();
        assert_eq!(facet_area(&g, 2), 0.125);
        assert_eq!(facet_area(&g, 0), 0.25);
    }

    #[test]
    fn index_roundtrip() {
        let g = Grid::new([3, 4, 5], [1.0; 3], [0.0; 3]).unwrap();
        for idx in 0..g.len() {
            let [i, j, k] = g.coords(idx);
            assert_eq!(g.index(i, j, k), idx);
        }
        assert_eq!(g.plus(g.index(2, 0, 0), 0), None);
        assert_eq!(g.plus(g.index(1, 3, 4), 0), Some(g.index(2, 3, 4)));
        assert_eq!(g.minus(g.index(1, 3, 4), 2), Some(g.index(1, 3, 3)));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new([0, 1, 1], [1.0; 3], [0.0; 3]).is_err());
        assert!(Grid::new([1, 1, 1], [1.0, 0.0, 1.0], [0.0; 3]).is_err());
    }

    #[test]
    fn strips() {
        let g = Grid::new([4, 1, 6], [1.0; 3], [0.0; 3]).unwrap().with_strip(2, 1, 2);
        assert!(g.in_strip(g.index(0, 0, 0)));
        assert!(!g.in_strip(g.index(0, 0, 1)));
        assert!(!g.in_strip(g.index(3, 0, 3)));
        assert!(g.in_strip(g.index(3, 0, 4)));
        assert!(g.in_strip(g.index(3, 0, 5)));
    }
}
