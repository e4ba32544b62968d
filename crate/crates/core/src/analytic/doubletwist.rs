use std::f64::consts::PI;

use super::quad::cin;
use crate::energy::{total_energy, ModelParams};
use crate::error::{LcError, Result};
use crate::fieldcore::{DirectorField, Grid};

/// Non-overlapping circles of radius π/(2t) in the (x, z) cross-section
/// [-L1, L1]×[0, height]; each is the section of a cylinder along y.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleTwistLattice {
    pub t: f64,
    pub radius: f64,
    /// (x, z) centers.
    pub centers: Vec<[f64; 2]>,
    pub axis: [f64; 3],
    pub count: usize,
    pub l1: f64,
    pub l2: f64,
    pub height: f64,
    /// "hex" or "rows-m" for the centered-rectangular variant with m rows.
    pub arrangement: String,
}

/// (⌊4L1t/π⌋·⌊dt/2π⌋, ⌊8L1 d t²/π³⌋).
pub fn count_bounds(t: f64, l1: f64, height: f64) -> (usize, usize) {
    let lo = (4.0 * l1 * t / PI).floor() * (height * t / (2.0 * PI)).floor();
    let hi = (8.0 * l1 * height * t * t / PI.powi(3)).floor();
    (lo.max(0.0) as usize, hi.max(0.0) as usize)
}

const FIT_TOL: f64 = 1e-12;

/// Rows at heights z_r, row r shifted by offs[r % 2], in-row spacing s.
fn fill_rows(r: f64, l1: f64, rows: &[f64], s: f64, offs: [f64; 2]) -> Vec<[f64; 2]> {
    let w = 2.0 * l1;
    let mut out = Vec::new();
    for (i, &z) in rows.iter().enumerate() {
        let off = offs[i % 2];
        let span = w - 2.0 * r - off;
        if span < -FIT_TOL {
            continue;
        }
        let n = (span / s + FIT_TOL).floor() as usize + 1;
        for j in 0..n {
            out.push([-l1 + r + off + j as f64 * s, z]);
        }
    }
    out
}

/// Hexagonal packing anchored at (-L1 + R, R), row pitch √3R.
fn hex(r: f64, l1: f64, height: f64) -> Vec<[f64; 2]> {
    let pitch = 3f64.sqrt() * r;
    let m = ((height - 2.0 * r) / pitch + FIT_TOL).floor() as usize + 1;
    let rows: Vec<f64> = (0..m).map(|i| r + i as f64 * pitch).collect();
    fill_rows(r, l1, &rows, 2.0 * r, [0.0, r])
}

/// m rows spread over the full height; the in-row spacing is the smallest
/// that keeps adjacent rows from overlapping.
fn spread_rows(r: f64, l1: f64, height: f64, m: usize) -> Option<Vec<[f64; 2]>> {
    if m == 1 {
        return Some(fill_rows(r, l1, &[r], 2.0 * r, [0.0, 0.0]));
    }
    let p = (height - 2.0 * r) / (m - 1) as f64;
    if p < r * (1.0 - FIT_TOL) {
        return None;
    }
    let rows: Vec<f64> = (0..m).map(|i| r + i as f64 * p).collect();
    let (s, off) = if p >= 2.0 * r * (1.0 - FIT_TOL) {
        (2.0 * r, 0.0)
    } else if p >= 3f64.sqrt() * r * (1.0 - FIT_TOL) {
        (2.0 * r, r)
    } else {
        let s = 2.0 * (4.0 * r * r - p * p).max(0.0).sqrt();
        (s, 0.5 * s)
    };
    Some(fill_rows(r, l1, &rows, s, [0.0, off]))
}

pub fn double_twist_lattice(t: f64, l1: f64, l2: f64, height: f64) -> Result<DoubleTwistLattice> {
    if !(t > 0.0 && l1 > 0.0 && l2 > 0.0 && height > 0.0) {
        return Err(LcError::Domain("t, L1, L2, height must be > 0".into()));
    }
    let r = PI / (2.0 * t);
    if 2.0 * r > (2.0 * l1).min(height) * (1.0 + FIT_TOL) {
        return Err(LcError::Domain(format!("no cylinder of radius {r} fits")));
    }
    let mut centers = hex(r, l1, height);
    let mut arrangement = "hex".to_string();
    let mut m = 1;
    while let Some(c) = spread_rows(r, l1, height, m) {
        if c.len() > centers.len() {
            centers = c;
            arrangement = format!("rows-{m}");
        }
        m += 1;
    }
    let count = centers.len();
    Ok(DoubleTwistLattice { t, radius: r, centers, axis: [0.0, 1.0, 0.0], count, l1, l2, height, arrangement })
}

/// Director of a single cylinder at offset (dx, dz) from its axis:
/// cos(t r) e_y - sin(t r) e_φ with e_φ = e_y × ρ̂.
fn cylinder_director(t: f64, dx: f64, dz: f64) -> [f64; 3] {
    let r = dx.hypot(dz);
    if r == 0.0 {
        return [0.0, 1.0, 0.0];
    }
    let (s, c) = (t * r).sin_cos();
    let ephi = [dz / r, 0.0, -dx / r];
    [-s * ephi[0], c, -s * ephi[2]]
}

impl DoubleTwistLattice {
    fn value_at(&self, x: f64, z: f64) -> [f64; 3] {
        for c in &self.centers {
            let (dx, dz) = (x - c[0], z - c[1]);
            if dx * dx + dz * dz < self.radius * self.radius {
                return cylinder_director(self.t, dx, dz);
            }
        }
        [0.0; 3]
    }

    /// Grid over the box with one strip layer outside each z face
    /// (e1 below, e3 above) and a single cell across y.
    pub fn grid(&self, nx: usize, nz: usize) -> Result<Grid> {
        let hz = self.height / nz as f64;
        let g = Grid::new(
            [nx, 1, nz + 2],
            [2.0 * self.l1 / nx as f64, 2.0 * self.l2, hz],
            [-self.l1, -self.l2, -hz],
        )?;
        Ok(g.with_strip(2, 1, 1))
    }
}

/// Lattice director; zero between cylinders, boundary data in z strips.
pub fn double_twist_field(lat: &DoubleTwistLattice, grid: &Grid) -> Result<DirectorField> {
    DirectorField::from_fn(grid.clone(), |x| {
        if x[2] < 0.0 {
            [1.0, 0.0, 0.0]
        } else if x[2] > lat.height {
            [0.0, 0.0, 1.0]
        } else {
            lat.value_at(x[0], x[2])
        }
    })
}

/// Energy per unit length of one cylinder: 2π ∫₀^R (sin²(tr)/r² - t sin(2tr)/r) r dr
/// = 2π (Cin(π)/2 - 1), the same for every t.
pub fn cylinder_energy_per_length() -> f64 {
    2.0 * PI * (0.5 * cin(PI) - 1.0)
}

/// Grid quadrature of the elastic energy of one cylinder of the given
/// length, `cells` cells across its diameter.
pub fn cylinder_elastic_energy(t: f64, length: f64, cells: usize) -> Result<f64> {
    let r = PI / (2.0 * t);
    let g = Grid::boxed([cells, 1, cells], [-r, -0.5 * length, -r], [r, 0.5 * length, r])?;
    let f = DirectorField::from_fn(g, |x| {
        if x[0] * x[0] + x[2] * x[2] < r * r { cylinder_director(t, x[0], x[2]) } else { [0.0; 3] }
    })?;
    let e = total_energy(&f, &ModelParams::new(t, 1.0)?, None)?;
    Ok(e.elastic())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeEnergy {
    pub per_cylinder: f64,
    pub elastic: f64,
    /// Cylinder walls plus the two z faces (8 L1 L2).
    pub jump_area: f64,
    pub total: f64,
}

/// Closed-form energy of the lattice state with surface cost K.
pub fn lattice_energy(lat: &DoubleTwistLattice, k: f64) -> LatticeEnergy {
    let length = 2.0 * lat.l2;
    let per_cylinder = cylinder_energy_per_length() * length;
    let elastic = per_cylinder * lat.count as f64;
    let jump_area = lat.count as f64 * 2.0 * PI * lat.radius * length + 8.0 * lat.l1 * lat.l2;
    LatticeEnergy { per_cylinder, elastic, jump_area, total: elastic + k * jump_area }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::quad::adaptive_simpson;
    use crate::energy::of_density;
    use crate::linalg::norm;

    /// Radial integrand of the ansatz, derived by hand:
    /// w(r) = sin²(tr)/r² - t sin(2tr)/r.
    fn radial_oracle(t: f64) -> f64 {
        let r0 = PI / (2.0 * t);
        2.0 * PI
            * adaptive_simpson(
                &|r: f64| if r == 0.0 { -2.0 * t * t * 0.0 } else { ((t * r).sin().powi(2) / (r * r) - t * (2.0 * t * r).sin() / r) * r },
                0.0,
                r0,
                1e-13,
            )
            .unwrap()
    }

    #[test]
    fn per_length_energy_is_negative_constant() {
        let c = cylinder_energy_per_length();
        assert!(c < 0.0);
        assert!((c + 1.1052).abs() < 1e-3, "{c}");
        for &t in &[3.5, 7.0, 20.0] {
            assert!((radial_oracle(t) - c).abs() < 1e-10);
        }
    }

    #[test]
    fn ansatz_density_matches_radial_form() {
        // Finite-difference check of the pointwise density at a few radii.
        let t = 4.0;
        let h = 1e-5;
        for &(dx, dz) in &[(0.1, 0.05), (-0.2, 0.15), (0.0, 0.3)] {
            let mut g = [[0.0; 3]; 3];
            for (a, e) in [(0usize, [h, 0.0]), (2usize, [0.0, h])] {
                let p = cylinder_director(t, dx + e[0], dz + e[1]);
                let m = cylinder_director(t, dx - e[0], dz - e[1]);
                for i in 0..3 {
                    g[i][a] = (p[i] - m[i]) / (2.0 * h);
                }
            }
            let n = cylinder_director(t, dx, dz);
            let r: f64 = f64::hypot(dx, dz);
            let w = (t * r).sin().powi(2) / (r * r) - t * (2.0 * t * r).sin() / r;
            assert!((of_density(n, &g, t) - w).abs() < 1e-6);
        }
    }

    #[test]
    fn grid_cylinder_energy_negative() {
        let t = 10.0;
        let e = cylinder_elastic_energy(t, 1.0, 160).unwrap();
        assert!(e < 0.0);
        assert!((e / cylinder_energy_per_length() - 1.0).abs() < 0.05, "{e}");
    }

    #[test]
    fn lattice_geometry() {
        let lat = double_twist_lattice(2.0 * PI, 0.5, 0.5, 1.0).unwrap();
        assert_eq!(lat.radius, 0.25);
        assert!(lat.count >= 1);
        for t in [4.0, 2.0 * PI, 7.9, 8.3, 13.0, 25.0, 40.0] {
            let lat = double_twist_lattice(t, 0.5, 0.5, 1.0).unwrap();
            let r = lat.radius;
            for (i, a) in lat.centers.iter().enumerate() {
                assert!(a[0] >= -0.5 + r - 1e-12 && a[0] <= 0.5 - r + 1e-12);
                assert!(a[1] >= r - 1e-12 && a[1] <= 1.0 - r + 1e-12);
                for b in &lat.centers[i + 1..] {
                    assert!((a[0] - b[0]).hypot(a[1] - b[1]) >= 2.0 * r - 1e-12);
                }
            }
            let (lo, hi) = count_bounds(t, 0.5, 1.0);
            assert!(lo <= lat.count && lat.count <= hi, "t={t}: {lo} <= {} <= {hi}", lat.count);
        }
        assert!(double_twist_lattice(1.0, 0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn lattice_field_values() {
        let lat = double_twist_lattice(12.0, 0.5, 0.5, 1.0).unwrap();
        let g = lat.grid(64, 64).unwrap();
        let f = double_twist_field(&lat, &g).unwrap();
        assert!(f.values.iter().all(|v| { let r = norm(*v); r == 0.0 || (r - 1.0).abs() < 1e-14 }));
        let c = lat.centers[0];
        assert_eq!(lat.value_at(c[0], c[1]), [0.0, 1.0, 0.0]);
        // Purely azimuthal at the rim.
        let rim = lat.value_at(c[0] + lat.radius * (1.0 - 1e-12), c[1]);
        assert!(rim[1].abs() < 1e-9 && (rim[2].abs() - 1.0).abs() < 1e-9);
    }
}
