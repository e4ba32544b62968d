use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::energy::{curl, of_parts, ModelParams};
use crate::error::{LcError, Result};
use crate::fieldcore::{detect_jumps, DirectorField, Grid, JumpMask, JumpSet, StencilMap, DEFAULT_ANGLE_THRESHOLD, ZERO_TOL};
use crate::linalg::{levi, norm, Vec3};
use crate::qtensor::{bulk_sigma, bulk_sigma_prime, BulkParams};

/// The discrete energy on a fixed grid with a mutable jump mask.
pub(crate) struct Discrete<'g> {
    pub map: StencilMap<'g>,
    pub fixed: &'g [bool],
    pub t: f64,
    pub k: f64,
    pub bulk: Option<BulkParams>,
    pub vol: f64,
}

/// Summed terms, already multiplied by the cell volume; `area` is raw.
/// `gradient` is the facet sum V Σ |n_q - n_p|²/h² over open facets.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Terms {
    pub gradient: f64,
    pub twist: f64,
    pub norm: f64,
    pub bulk: f64,
    pub area: f64,
}

impl Terms {
    pub fn k_area(&self, k: f64) -> f64 {
        k * self.area
    }

    pub fn total(&self, k: f64) -> f64 {
        self.gradient + self.twist + self.norm + self.bulk + k * self.area
    }
}

pub(crate) fn is_zero(v: Vec3) -> bool {
    norm(v) <= ZERO_TOL
}

impl<'g> Discrete<'g> {
    pub fn new(grid: &'g Grid, fixed: &'g [bool], mask: JumpMask, model: &ModelParams) -> Self {
        Discrete {
            map: StencilMap::from_mask(grid, mask),
            fixed,
            t: model.t,
            k: model.k,
            bulk: model.bulk,
            vol: grid.cell_volume(),
        }
    }

    pub fn grid(&self) -> &Grid {
        self.map.grid
    }

    /// True when facet (p, a) exists and is not between two fixed cells.
    pub fn counts(&self, p: usize, a: usize) -> bool {
        self.map.grid.plus(p, a).is_some_and(|q| !(self.fixed[p] && self.fixed[q]))
    }

    /// Per-volume twist + norm + bulk density at `p` (zero on fixed cells).
    pub fn pointwise(&self, values: &[Vec3], p: usize) -> [f64; 3] {
        if self.fixed[p] {
            return [0.0; 3];
        }
        let n = values[p];
        let g = self.map.grad_at(values, p);
        let (_, b, c) = of_parts(n, &g, self.t);
        [b, c, self.bulk.as_ref().map_or(0.0, |bp| bulk_sigma(norm(n), bp))]
    }

    /// Per-volume gradient term of facet (p, a): |n_q - n_p|²/h² if open.
    pub fn facet_term(&self, values: &[Vec3], p: usize, a: usize) -> f64 {
        match self.map.grid.plus(p, a) {
            Some(q) if !self.map.mask.has(p, a) && self.counts(p, a) => {
                let (u, v) = (values[p], values[q]);
                let d = [v[0] - u[0], v[1] - u[1], v[2] - u[2]];
                (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) / (self.map.grid.spacing[a] * self.map.grid.spacing[a])
            }
            _ => 0.0,
        }
    }

    /// Volume energy of the given cells' pointwise terms and facets'
    /// gradient terms, plus K times the raw area of those facets.
    pub fn local(&self, values: &[Vec3], cells: &[usize], facets: &[(usize, usize)]) -> f64 {
        let w: f64 = cells.iter().map(|&c| self.pointwise(values, c).iter().sum::<f64>()).sum();
        let f: f64 = facets.iter().map(|&(c, a)| self.facet_term(values, c, a)).sum();
        let area: f64 = facets
            .iter()
            .filter(|&&(c, a)| self.map.mask.has(c, a) && self.counts(c, a))
            .map(|&(_, a)| self.map.grid.facet_area(a))
            .sum();
        (w + f) * self.vol + self.k * area
    }

    pub fn terms(&self, values: &[Vec3]) -> Terms {
        let grid = self.grid();
        let mut s = Terms::default();
        for p in 0..grid.len() {
            let [b, c, e] = self.pointwise(values, p);
            s.twist += b;
            s.norm += c;
            s.bulk += e;
            for a in 0..3 {
                s.gradient += self.facet_term(values, p, a);
                if self.map.mask.has(p, a) && self.counts(p, a) {
                    s.area += grid.facet_area(a);
                }
            }
        }
        s.gradient *= self.vol;
        s.twist *= self.vol;
        s.norm *= self.vol;
        s.bulk *= self.vol;
        s
    }

    /// dE/dn for every cell, divided by the cell volume.
    pub fn gradient(&self, values: &[Vec3]) -> Vec<Vec3> {
        let grid = self.grid();
        let t = self.t;
        let mut out = vec![[0.0; 3]; grid.len()];
        for p in 0..grid.len() {
            for a in 0..3 {
                if self.facet_term(values, p, a) == 0.0 {
                    continue;
                }
                let q = grid.plus(p, a).expect("open facet");
                let h2 = grid.spacing[a] * grid.spacing[a];
                for i in 0..3 {
                    let d = 2.0 * (values[q][i] - values[p][i]) / h2;
                    out[q][i] += d;
                    out[p][i] -= d;
                }
            }
            if self.fixed[p] {
                continue;
            }
            let n = values[p];
            if let Some(bp) = &self.bulk {
                let r = norm(n);
                if r > 0.0 {
                    let d = bulk_sigma_prime(r, bp) / r;
                    for i in 0..3 {
                        out[p][i] += d * n[i];
                    }
                }
            }
            if t == 0.0 {
                continue;
            }
            let g = self.map.grad_at(values, p);
            let c = curl(&g);
            for i in 0..3 {
                out[p][i] += 2.0 * t * c[i] + 2.0 * t * t * n[i];
            }
            for a in 0..3 {
                // ∂(2t n·curl G)/∂G[i][a] = 2t Σ_j ε_jai n_j
                let tw: Vec3 = std::array::from_fn(|i| 2.0 * t * (0..3).map(|j| levi(j, a, i) * n[j]).sum::<f64>());
                let (terms, m) = self.map.stencil(p, a).terms(p, grid.spacing[a]);
                for &(q, coef) in &terms[..m] {
                    for i in 0..3 {
                        out[q][i] += coef * tw[i];
                    }
                }
            }
        }
        out
    }

    /// Sets the mask on facets whose zero status differs (always jumps) or
    /// that join two zero cells (never jumps). Facets of `cells` only.
    pub fn enforce_forced(&mut self, values: &[Vec3], cells: impl IntoIterator<Item = usize>) {
        let grid = self.map.grid;
        for p in cells {
            for (lo, a) in facets_of(grid, p) {
                let hi = grid.plus(lo, a).expect("facet has a neighbor");
                match (is_zero(values[lo]), is_zero(values[hi])) {
                    (true, true) => self.map.mask.set(lo, a, false),
                    (true, false) | (false, true) => self.map.mask.set(lo, a, true),
                    (false, false) => {}
                }
            }
        }
    }
}

/// The up to six facets of cell `p`, as (lower cell, axis).
pub(crate) fn facets_of(grid: &Grid, p: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(6);
    for a in 0..3 {
        v.extend(grid.minus(p, a).map(|m| (m, a)));
        if grid.plus(p, a).is_some() {
            v.push((p, a));
        }
    }
    v
}

/// Cells whose density depends on the value at `q`.
pub(crate) fn touched(grid: &Grid, q: usize) -> Vec<usize> {
    let mut v = vec![q];
    for a in 0..3 {
        v.extend(grid.minus(q, a));
        v.extend(grid.plus(q, a));
    }
    v
}

/// dE/dn of the volume energy minimized by [`relax`](super::relax) (no
/// projection), jumps held fixed.
pub fn energy_gradient(field: &DirectorField, model: &ModelParams, jumps: &JumpSet) -> Result<Vec<Vec3>> {
    field.grid.check_same(&jumps.grid)?;
    let d = Discrete::new(&field.grid, &field.fixed, jumps.mask(), model);
    let vol = d.vol;
    Ok(d.gradient(&field.values).into_iter().map(|g| g.map(|x| x * vol)).collect())
}

/// Max relative error between [`energy_gradient`] and central differences of
/// the volume energy at 32 seeded random free cells. The jump set is
/// detected once and held fixed.
pub fn gradient_check(field: &DirectorField, model: &ModelParams, h_fd: f64, seed: u64) -> Result<f64> {
    if !(h_fd > 0.0) {
        return Err(LcError::Domain(format!("h_fd must be > 0, got {h_fd}")));
    }
    let jumps = detect_jumps(field, DEFAULT_ANGLE_THRESHOLD)?;
    let grid = &field.grid;
    let d = Discrete::new(grid, &field.fixed, jumps.mask(), model);
    let free: Vec<usize> = (0..grid.len()).filter(|&p| !field.fixed[p]).collect();
    if free.is_empty() {
        return Ok(0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = sample(&mut rng, free.len(), free.len().min(32));
    let analytic = d.gradient(&field.values);
    let mut vals = field.values.clone();
    let (mut err, mut scale) = (0.0f64, 0.0f64);
    for idx in picks.iter() {
        let q = free[idx];
        let near = touched(grid, q);
        let facets = facets_of(grid, q);
        let local = |v: &[Vec3]| d.local(v, &near, &facets);
        for i in 0..3 {
            let orig = vals[q][i];
            vals[q][i] = orig + h_fd;
            let ep = local(&vals);
            vals[q][i] = orig - h_fd;
            let em = local(&vals);
            vals[q][i] = orig;
            let fd = (ep - em) / (2.0 * h_fd);
            let an = analytic[q][i] * d.vol;
            err = err.max((an - fd).abs());
            scale = scale.max(fd.abs()).max(an.abs());
        }
    }
    // Floor at the size of a unit-amplitude grid-scale gradient so that
    // rounding noise on a stationary field does not count as error.
    let inv: f64 = grid.active_axes().iter().map(|&a| grid.spacing[a].powi(-2)).sum();
    let floor = 1e-10 * d.vol * (inv + model.t * model.t);
    Ok(if err == 0.0 { 0.0 } else { err / scale.max(floor) })
}
