use super::quad::adaptive_simpson;
use crate::error::{LcError, Result};
use crate::fieldcore::{Grid, ScalarField};
use crate::qtensor::{bulk_sigma, bulk_sigma_prime, critical_bulk, BulkParams};

/// A nonnegative potential with zeros at `zeros().0 < zeros().1`.
pub trait DoubleWell {
    fn name(&self) -> &'static str;
    fn sigma(&self, v: f64) -> f64;
    fn sigma_prime(&self, v: f64) -> f64;
    fn sigma_second(&self, v: f64) -> f64;
    fn zeros(&self) -> (f64, f64);
}

/// κ (v - a)² (v - b)².
#[derive(Clone, Copy, Debug)]
pub struct QuarticWell {
    pub kappa: f64,
    pub a: f64,
    pub b: f64,
}

impl Default for QuarticWell {
    fn default() -> Self {
        QuarticWell { kappa: 1.0, a: 0.0, b: 1.0 }
    }
}

impl DoubleWell for QuarticWell {
    fn name(&self) -> &'static str {
        "quartic"
    }
    fn sigma(&self, v: f64) -> f64 {
        self.kappa * ((v - self.a) * (v - self.b)).powi(2)
    }
    fn sigma_prime(&self, v: f64) -> f64 {
        let (p, q) = (v - self.a, v - self.b);
        2.0 * self.kappa * p * q * (p + q)
    }
    fn sigma_second(&self, v: f64) -> f64 {
        let (p, q) = (v - self.a, v - self.b);
        2.0 * self.kappa * (p * p + 4.0 * p * q + q * q)
    }
    fn zeros(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

/// σ ≡ 0 with prescribed end values.
#[derive(Clone, Copy, Debug)]
pub struct ZeroWell {
    pub lo: f64,
    pub hi: f64,
}

impl Default for ZeroWell {
    fn default() -> Self {
        ZeroWell { lo: 0.0, hi: 1.0 }
    }
}

impl DoubleWell for ZeroWell {
    fn name(&self) -> &'static str {
        "zero"
    }
    fn sigma(&self, _: f64) -> f64 {
        0.0
    }
    fn sigma_prime(&self, _: f64) -> f64 {
        0.0
    }
    fn sigma_second(&self, _: f64) -> f64 {
        0.0
    }
    fn zeros(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

/// Ericksen bulk σ at coexistence: zeros 0 and s₊.
#[derive(Clone, Copy, Debug)]
pub struct LandauWell {
    pub params: BulkParams,
    pub s_plus: f64,
}

impl LandauWell {
    pub fn critical(b: f64, c: f64) -> Result<Self> {
        let (a, s_plus) = critical_bulk(b, c)?;
        Ok(LandauWell { params: BulkParams::from_ericksen(a, b, c)?, s_plus })
    }
}

impl Default for LandauWell {
    /// b = -3, c = 2: σ = s²(1 - s)²/2.
    fn default() -> Self {
        LandauWell::critical(-3.0, 2.0).expect("valid constants")
    }
}

impl DoubleWell for LandauWell {
    fn name(&self) -> &'static str {
        "landau"
    }
    fn sigma(&self, v: f64) -> f64 {
        bulk_sigma(v, &self.params)
    }
    fn sigma_prime(&self, v: f64) -> f64 {
        bulk_sigma_prime(v, &self.params)
    }
    fn sigma_second(&self, v: f64) -> f64 {
        let p = &self.params;
        p.a + 2.0 * p.b * v + 3.0 * p.c * v * v
    }
    fn zeros(&self) -> (f64, f64) {
        (0.0, self.s_plus)
    }
}

pub const WELL_NAMES: [&str; 3] = ["quartic", "zero", "landau"];

pub fn well_by_name(name: &str) -> Option<Box<dyn DoubleWell>> {
    match name {
        "quartic" => Some(Box::new(QuarticWell::default())),
        "zero" => Some(Box::new(ZeroWell::default())),
        "landau" => Some(Box::new(LandauWell::default())),
        _ => None,
    }
}

/// 2√(2/3) ∫ √σ between the zeros.
pub fn limit_constant(well: &dyn DoubleWell) -> Result<f64> {
    let (lo, hi) = well.zeros();
    let i = adaptive_simpson(&|v| well.sigma(v).max(0.0).sqrt(), lo, hi, 1e-10)?;
    Ok(2.0 * (2.0f64 / 3.0).sqrt() * i)
}

#[derive(Clone, Debug)]
pub struct MMResult {
    pub eps: f64,
    /// Nodal values on [0, 1]: cell i is centered at i/N, end cells are fixed.
    pub minimizer: ScalarField,
    pub energy: f64,
    pub limit_constant: f64,
    pub iterations: usize,
    pub grad_norm: f64,
}

pub const GRAD_TOL: f64 = 1e-8;
const MAX_ITER: usize = 10_000;

// 3-point Gauss on [0, 1].
const GAUSS: [(f64, f64); 3] = [
    (0.112_701_665_379_258_31, 5.0 / 18.0),
    (0.5, 8.0 / 18.0),
    (0.887_298_334_620_741_7, 5.0 / 18.0),
];

struct Discrete<'a> {
    well: &'a dyn DoubleWell,
    eps: f64,
    h: f64,
}

impl Discrete<'_> {
    fn energy(&self, v: &[f64]) -> f64 {
        let (e, h) = (self.eps, self.h);
        v.windows(2)
            .map(|w| {
                let d = w[1] - w[0];
                let pot: f64 = GAUSS.iter().map(|&(x, wq)| wq * self.well.sigma((1.0 - x) * w[0] + x * w[1])).sum();
                2.0 * e / 3.0 * d * d / h + h / e * pot
            })
            .sum()
    }

    /// Gradient and tridiagonal Hessian (diag, off) over all nodes.
    fn derivs(&self, v: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n = v.len();
        let (e, h) = (self.eps, self.h);
        let kk = 4.0 * e / (3.0 * h);
        let mut g = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n - 1];
        for i in 0..n - 1 {
            let d = v[i + 1] - v[i];
            g[i] -= kk * d;
            g[i + 1] += kk * d;
            diag[i] += kk;
            diag[i + 1] += kk;
            off[i] -= kk;
            for &(x, wq) in &GAUSS {
                let vq = (1.0 - x) * v[i] + x * v[i + 1];
                let s1 = h / e * wq * self.well.sigma_prime(vq);
                let s2 = h / e * wq * self.well.sigma_second(vq);
                g[i] += s1 * (1.0 - x);
                g[i + 1] += s1 * x;
                diag[i] += s2 * (1.0 - x) * (1.0 - x);
                diag[i + 1] += s2 * x * x;
                off[i] += s2 * x * (1.0 - x);
            }
        }
        (g, diag, off)
    }
}

/// Solves the symmetric tridiagonal system; None if a pivot is not positive.
fn thomas(diag: &[f64], off: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut p = diag[0];
    if !(p > 0.0) {
        return None;
    }
    c[0] = if n > 1 { off[0] / p } else { 0.0 };
    d[0] = rhs[0] / p;
    for i in 1..n {
        p = diag[i] - off[i - 1] * c[i - 1];
        if !(p > 0.0) {
            return None;
        }
        if i < n - 1 {
            c[i] = off[i] / p;
        }
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / p;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Some(d)
}

fn interior_norm(g: &[f64]) -> f64 {
    g[1..g.len() - 1].iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Minimizes the P1 discretization of ∫ (2ε/3)|v'|² + σ(v)/ε on [0, 1]
/// with v(0) = s₋, v(1) = s₊, starting from the linear interpolant.
pub fn modica_mortola_1d(eps: f64, well: &dyn DoubleWell, cells: usize) -> Result<MMResult> {
    if !(eps > 0.0) {
        return Err(LcError::Domain(format!("eps must be > 0, got {eps}")));
    }
    if cells < 2 {
        return Err(LcError::Domain("need at least 2 cells".into()));
    }
    let (lo, hi) = well.zeros();
    let h = 1.0 / cells as f64;
    let prob = Discrete { well, eps, h };
    let mut v: Vec<f64> = (0..=cells).map(|i| lo + (hi - lo) * i as f64 * h).collect();
    let mut f = prob.energy(&v);
    let (mut g, mut diag, mut off) = prob.derivs(&v);
    let mut gn = interior_norm(&g);
    let mut mu = 1e-8 * diag.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut iterations = 0;
    while gn > GRAD_TOL {
        if iterations >= MAX_ITER {
            return Err(LcError::Numeric(format!("no convergence after {MAX_ITER} steps, |g| = {gn:e}")));
        }
        iterations += 1;
        let m = cells - 1;
        let dd: Vec<f64> = diag[1..=m].iter().map(|x| x + mu).collect();
        let rhs: Vec<f64> = g[1..=m].iter().map(|x| -x).collect();
        let Some(step) = thomas(&dd, &off[1..m], &rhs) else {
            mu = (mu * 4.0).max(1e-12);
            continue;
        };
        let mut trial = v.clone();
        for (t, s) in trial[1..=m].iter_mut().zip(&step) {
            *t += s;
        }
        let ft = prob.energy(&trial);
        let (gt, dt, ot) = prob.derivs(&trial);
        let gtn = interior_norm(&gt);
        if ft < f || (ft <= f + 1e-13 * f.abs().max(1.0) && gtn < gn) {
            v = trial;
            f = ft;
            (g, diag, off, gn) = (gt, dt, ot, gtn);
            mu /= 3.0;
        } else {
            mu = (mu * 4.0).max(1e-12);
        }
    }
    let grid = Grid::new([cells + 1, 1, 1], [h, 1.0, 1.0], [-0.5 * h, 0.0, 0.0])?.with_strip(0, 1, 1);
    Ok(MMResult {
        eps,
        minimizer: ScalarField::new(grid, v)?,
        energy: f,
        limit_constant: limit_constant(well)?,
        iterations,
        grad_norm: gn,
    })
}
