use std::f64::consts::{FRAC_PI_2, PI};

use super::quad::agm;
use crate::error::{LcError, Result};
use crate::fieldcore::{DirectorField, Grid};

/// Twist-bend profile between e1 at z = 0 and e3 at z = 1: polar angle θ(z)
/// with θ'² = D - t²cos²θ, azimuth φ = t z.
#[derive(Clone, Debug, PartialEq)]
pub struct CholestericProfile {
    pub t: f64,
    pub d: f64,
    /// Uniform nodes z_i = i / steps.
    pub z: Vec<f64>,
    pub theta: Vec<f64>,
    pub phi_slope: f64,
}

/// g(D) = ∫₀^{π/2} (D - t²cos²u)^{-1/2} du - 1, via the AGM form of the
/// complete elliptic integral.
pub fn cholesteric_g(d: f64, t: f64) -> f64 {
    PI / (2.0 * agm((d - t * t).sqrt(), d.sqrt())) - 1.0
}

const STEPS: usize = 4096;

fn rhs(theta: f64, d: f64, t: f64) -> f64 {
    (d - t * t * theta.cos().powi(2)).max(0.0).sqrt()
}

fn rk4(theta: f64, h: f64, d: f64, t: f64) -> f64 {
    let k1 = rhs(theta, d, t);
    let k2 = rhs(theta + 0.5 * h * k1, d, t);
    let k3 = rhs(theta + 0.5 * h * k2, d, t);
    let k4 = rhs(theta + h * k3, d, t);
    theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

pub fn cholesteric_profile(t: f64) -> Result<CholestericProfile> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(LcError::Domain(format!("need t >= 0, got {t}")));
    }
    let t2 = t * t;
    let lo0 = t2 + 1e-12;
    let mut lo = lo0;
    let mut hi = (PI * PI / 4.0).max(t2) + 10.0;
    let mut expansions = 0;
    while cholesteric_g(hi, t) > 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(LcError::Numeric(format!("g > 0 at D = {hi}")));
        }
    }
    if !(cholesteric_g(lo, t) > 0.0) {
        return Err(LcError::Numeric(format!(
            "D not bracketed: g({lo}) = {}, g({hi}) = {}",
            cholesteric_g(lo, t),
            cholesteric_g(hi, t)
        )));
    }
    let mut d = 0.5 * (lo + hi);
    for _ in 0..400 {
        d = 0.5 * (lo + hi);
        if cholesteric_g(d, t) > 0.0 {
            lo = d;
        } else {
            hi = d;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    let g = cholesteric_g(d, t);
    if g.abs() > 1e-10 {
        return Err(LcError::Numeric(format!("|g(D)| = {g} after bisection")));
    }
    let h = 1.0 / STEPS as f64;
    let mut theta = Vec::with_capacity(STEPS + 1);
    theta.push(0.0);
    for i in 0..STEPS {
        theta.push(rk4(theta[i], h, d, t));
    }
    let end = theta[STEPS];
    if (end - FRAC_PI_2).abs() > 1e-8 {
        return Err(LcError::Numeric(format!("θ(1) = {end}, expected π/2")));
    }
    let z = (0..=STEPS).map(|i| i as f64 * h).collect();
    Ok(CholestericProfile { t, d, z, theta, phi_slope: t })
}

impl CholestericProfile {
    /// θ(z) from the nearest node below with one partial RK4 step; pinned to
    /// 0 and π/2 outside (0, 1).
    pub fn theta_at(&self, z: f64) -> f64 {
        if z <= 0.0 {
            return 0.0;
        }
        if z >= 1.0 {
            return FRAC_PI_2;
        }
        let n = self.theta.len() - 1;
        let i = ((z * n as f64).floor() as usize).min(n - 1);
        let dz = z - self.z[i];
        if dz == 0.0 {
            self.theta[i]
        } else {
            rk4(self.theta[i], dz, self.d, self.t)
        }
    }
}

/// n = (cosθ cos tz, cosθ sin tz, sinθ) at cell centers.
pub fn profile_to_field(p: &CholestericProfile, grid: &Grid) -> Result<DirectorField> {
    DirectorField::from_fn(grid.clone(), |x| {
        let th = p.theta_at(x[2]);
        let ph = p.phi_slope * x[2].clamp(0.0, 1.0);
        if th == FRAC_PI_2 {
            return [0.0, 0.0, 1.0];
        }
        [th.cos() * ph.cos(), th.cos() * ph.sin(), th.sin()]
    })
}

/// ∫₀¹ θ'² + t² sin²θ dz for the sampled profile (trapezoid rule on nodes).
pub fn profile_energy_1d(p: &CholestericProfile) -> f64 {
    let n = p.theta.len() - 1;
    let h = 1.0 / n as f64;
    let w = |th: f64| {
        let dth2 = p.d - p.t * p.t * th.cos().powi(2);
        dth2 + p.t * p.t * th.sin().powi(2)
    };
    let mut s = 0.5 * (w(p.theta[0]) + w(p.theta[n]));
    for th in &p.theta[1..n] {
        s += w(*th);
    }
    s * h
}
