//! Surface measures for facet jump sets.
//!
//! A staircase of facets overcounts the area of an oblique surface (by 3/2 on
//! average for a sphere). [`NormalWeighted`] estimates the local normal ν from
//! nearby facet centers and weights each facet by |ν·e_axis|, which is exact
//! for axis-aligned planes and consistent for smooth surfaces.

use super::grid::{facet_area, Grid};
use super::jumps::JumpSet;
use crate::linalg::{sym_eigen, Mat3, Vec3};

/// A way of measuring the area of a jump set, facet by facet.
pub trait JumpMeasure: Send + Sync {
    fn name(&self) -> &'static str;

    /// Area contribution of every facet, in [`JumpSet::facets`] order.
    fn facet_weights(&self, jumps: &JumpSet) -> Vec<f64>;

    fn area(&self, jumps: &JumpSet) -> f64 {
        self.facet_weights(jumps).iter().sum()
    }
}

/// Plain facet-area sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct FacetCount;

impl JumpMeasure for FacetCount {
    fn name(&self) -> &'static str {
        "facet-count"
    }

    fn facet_weights(&self, jumps: &JumpSet) -> Vec<f64> {
        jumps.facets().map(|f| facet_area(&jumps.grid, f.axis)).collect()
    }
}

/// Facet area times |ν_axis|, ν from a PCA of facet centers within
/// `radius_cells` cells.
#[derive(Clone, Copy, Debug)]
pub struct NormalWeighted {
    pub radius_cells: usize,
}

impl Default for NormalWeighted {
    fn default() -> Self {
        NormalWeighted { radius_cells: 3 }
    }
}

impl NormalWeighted {
    /// Estimated unit normal at each facet (the facet axis when the
    /// neighborhood is degenerate).
    pub fn normals(&self, jumps: &JumpSet) -> Vec<Vec3> {
        let grid = &jumps.grid;
        let active = grid.active_axes();
        let mask = jumps.mask();
        let r = self.radius_cells as i64;
        let hmax = active.iter().map(|&a| grid.spacing[a]).fold(0.0, f64::max);
        let reach = self.radius_cells as f64 * hmax * (1.0 + 1e-12);
        let mut out = Vec::with_capacity(jumps.len());
        let mut offsets: Vec<Vec3> = Vec::new();
        for f in jumps.facets() {
            let mut axis_normal = [0.0; 3];
            axis_normal[f.axis] = 1.0;
            if active.len() < 2 {
                out.push(axis_normal);
                continue;
            }
            let c = grid.coords(f.cell);
            let lo = |a: usize| if grid.dims[a] > 1 { -r } else { 0 };
            let hi = |a: usize| if grid.dims[a] > 1 { r } else { 0 };
            offsets.clear();
            for dk in lo(2)..=hi(2) {
                let k = c[2] as i64 + dk;
                if k < 0 || k >= grid.dims[2] as i64 {
                    continue;
                }
                for dj in lo(1)..=hi(1) {
                    let j = c[1] as i64 + dj;
                    if j < 0 || j >= grid.dims[1] as i64 {
                        continue;
                    }
                    for di in lo(0)..=hi(0) {
                        let i = c[0] as i64 + di;
                        if i < 0 || i >= grid.dims[0] as i64 {
                            continue;
                        }
                        let q = grid.index(i as usize, j as usize, k as usize);
                        for b in 0..3 {
                            if !mask.has(q, b) {
                                continue;
                            }
                            let cell_off = [di as f64, dj as f64, dk as f64];
                            let mut d = [0.0; 3];
                            for a in 0..3 {
                                let half = 0.5 * ((b == a) as i32 - (f.axis == a) as i32) as f64;
                                d[a] = (cell_off[a] + half) * grid.spacing[a];
                            }
                            if (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() <= reach {
                                offsets.push(d);
                            }
                        }
                    }
                }
            }
            out.push(pca_normal(grid, &offsets).unwrap_or(axis_normal));
        }
        out
    }
}

impl JumpMeasure for NormalWeighted {
    fn name(&self) -> &'static str {
        "normal-weighted"
    }

    fn facet_weights(&self, jumps: &JumpSet) -> Vec<f64> {
        let normals = self.normals(jumps);
        jumps
            .facets()
            .zip(normals)
            .map(|(f, nu)| nu[f.axis].abs() * facet_area(&jumps.grid, f.axis))
            .collect()
    }
}

/// Smallest-variance direction of the offsets within the grid's active axes.
fn pca_normal(grid: &Grid, offsets: &[Vec3]) -> Option<Vec3> {
    if offsets.len() < 2 {
        return None;
    }
    let nf = offsets.len() as f64;
    let mut mean = [0.0; 3];
    for d in offsets {
        for a in 0..3 {
            mean[a] += d[a];
        }
    }
    for m in mean.iter_mut() {
        *m /= nf;
    }
    let mut cov: Mat3 = [[0.0; 3]; 3];
    for d in offsets {
        for a in 0..3 {
            for b in 0..3 {
                cov[a][b] += (d[a] - mean[a]) * (d[b] - mean[b]);
            }
        }
    }
    let active: Vec<bool> = (0..3).map(|a| grid.dims[a] > 1).collect();
    let scale = cov[0][0] + cov[1][1] + cov[2][2];
    if !(scale > 0.0) {
        return None;
    }
    // Push inactive directions out of contention for the smallest eigenvalue.
    for a in 0..3 {
        if !active[a] {
            for b in 0..3 {
                cov[a][b] = 0.0;
                cov[b][a] = 0.0;
            }
            cov[a][a] = 1e6 * scale;
        }
    }
    let (vals, vecs) = sym_eigen(&cov);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let n_active = active.iter().filter(|&&x| x).count();
    // The surface must be spread in n_active - 1 directions.
    let spread = vals[order[n_active - 1]];
    let largest = vals[order[..n_active].iter().copied().max_by(|&i, &j| vals[i].total_cmp(&vals[j]))?];
    if !(spread > 1e-6 * largest) || !(largest > 0.0) {
        return None;
    }
    Some(vecs[order[0]])
}

pub const MEASURE_NAMES: [&str; 2] = ["normal-weighted", "facet-count"];

/// Registry lookup by name.
pub fn measure_by_name(name: &str) -> Option<Box<dyn JumpMeasure>> {
    match name {
        "normal-weighted" => Some(Box::new(NormalWeighted::default())),
        "facet-count" => Some(Box::new(FacetCount)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::{detect_jumps, DirectorField, DEFAULT_ANGLE_THRESHOLD};

    #[test]
    fn axis_plane_is_exact() {
        let g = Grid::boxed([6, 5, 8], [-0.5, -0.5, 0.0], [0.5, 0.5, 1.0]).unwrap();
        let f = DirectorField::from_fn(g, |x| if x[2] < 0.5 { [1.0, 0.0, 0.0] } else { [0.0, 0.0, 1.0] })
            .unwrap();
        let js = detect_jumps(&f, DEFAULT_ANGLE_THRESHOLD).unwrap();
        assert_eq!(js.len(), 30);
        let w = NormalWeighted::default().facet_weights(&js);
        assert!(w.iter().all(|&x| x == facet_area(&js.grid, 2)));
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!((FacetCount.area(&js) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn circle_perimeter_2d() {
        let n = 128;
        let g = Grid::boxed([n, n, 1], [-1.0, -1.0, 0.0], [1.0, 1.0, 1.0]).unwrap();
        let f = DirectorField::from_fn(g, |x| {
            if x[0].hypot(x[1]) < 0.5 { [0.0; 3] } else { [1.0, 0.0, 0.0] }
        })
        .unwrap();
        let js = detect_jumps(&f, DEFAULT_ANGLE_THRESHOLD).unwrap();
        let exact = std::f64::consts::PI;
        // The staircase length is 4/π times the perimeter.
        assert!((FacetCount.area(&js) / exact - 4.0 / std::f64::consts::PI).abs() < 0.03);
        assert!((NormalWeighted::default().area(&js) / exact - 1.0).abs() < 0.01);
    }

    #[test]
    fn registry_names() {
        for name in MEASURE_NAMES {
            assert_eq!(measure_by_name(name).unwrap().name(), name);
        }
        assert!(measure_by_name("nope").is_none());
    }
}
