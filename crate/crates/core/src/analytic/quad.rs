//! Scalar quadrature and special functions.

use crate::error::{LcError, Result};

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Option<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 {
            return None;
        }
        if delta.abs() <= 15.0 * tol {
            return Some(left + right + delta / 15.0);
        }
        Some(
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?,
        )
    }
    if a == b {
        return Ok(0.0);
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
        .filter(|x| x.is_finite())
        .ok_or_else(|| LcError::Numeric(format!("quadrature on [{a}, {b}] did not converge")))
}

/// Arithmetic-geometric mean.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
        a = an;
        b = bn;
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
    }
    0.5 * (a + b)
}

/// Cin(x) = ∫₀ˣ (1 - cos u)/u du, by its power series.
pub fn cin(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0; // x^{2k} / (2k)!
    let mut sum = 0.0;
    for k in 1..60 {
        let kk = 2 * k;
        term *= x2 / ((kk - 1) * kk) as f64;
        let add = term / kk as f64;
        sum += if k % 2 == 1 { add } else { -add };
        if add < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_polynomials_and_trig() {
        let v = adaptive_simpson(&|x| x * x * x - x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn agm_elliptic() {
        // π/(2 AGM(1, √2/2·...)) check against a direct integral.
        let (a, b) = (0.3f64, 1.7f64);
        let direct = adaptive_simpson(&|u: f64| 1.0 / (a * a * u.cos().powi(2) + b * b * u.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 1e-13).unwrap();
        assert!((PI / (2.0 * agm(a, b)) - direct).abs() < 1e-11);
    }

    #[test]
    fn cin_matches_quadrature() {
        let direct = adaptive_simpson(&|u: f64| if u == 0.0 { 0.0 } else { (1.0 - u.cos()) / u }, 0.0, PI, 1e-14).unwrap();
        assert!((cin(PI) - direct).abs() < 1e-12);
        // γ + ln π - Ci(π), with Ci(π) = 0.07366791204642548.
        assert!((cin(PI) - (0.5772156649015329 + PI.ln() - 0.07366791204642548)).abs() < 1e-12);
    }
}
