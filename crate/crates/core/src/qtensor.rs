//! Q-tensor algebra: uniaxial/biaxial construction and decomposition, bulk
//! potentials, the Ericksen–Landau constant map and the Frobenius gap bounds.

use crate::error::{LcError, Result};
use crate::linalg::{frob2, mat_add, mat_mul, mat_scale, mat_sub, norm, outer, sym_eigen, trace, Mat3, Vec3, IDENTITY};

const UNIT_TOL: f64 = 1e-9;

/// Ericksen (a, b, c) and Landau (ā, b̄, c̄) bulk constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BulkParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub abar: f64,
    pub bbar: f64,
    pub cbar: f64,
}

impl BulkParams {
    /// Ericksen constants with the Landau ones filled in by [`constants_map`].
    pub fn from_ericksen(a: f64, b: f64, c: f64) -> Result<Self> {
        let (abar, bbar, cbar) = constants_map(a, b, c)?;
        Ok(BulkParams { a, b, c, abar, bbar, cbar })
    }

    /// All constants zero (no bulk potential).
    pub fn zero() -> Self {
        BulkParams { a: 0.0, b: 0.0, c: 0.0, abar: 0.0, bbar: 0.0, cbar: 0.0 }
    }

    /// Measured 5CB-type constants b = -0.64e6, c = 0.35e6 at the coexistence a.
    pub fn measured_critical() -> Self {
        let (b, c) = (-0.64e6, 0.35e6);
        let (a, _) = critical_bulk(b, c).expect("constants are valid");
        Self::from_ericksen(a, b, c).expect("c > 0")
    }
}

/// `s1 (n1⊗n1 - I/3) + s2 (n2⊗n2 - I/3)` with s1 ≥ 0 ≥ s2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiaxialDecomposition {
    pub s1: f64,
    pub n1: Vec3,
    pub s2: f64,
    pub n2: Vec3,
}

impl BiaxialDecomposition {
    pub fn zero() -> Self {
        BiaxialDecomposition { s1: 0.0, n1: [1.0, 0.0, 0.0], s2: 0.0, n2: [0.0, 1.0, 0.0] }
    }

    pub fn validate(&self) -> Result<()> {
        check_unit(self.n1)?;
        check_unit(self.n2)?;
        if !(self.s1 >= 0.0 && self.s2 <= 0.0) {
            return Err(LcError::Domain(format!("need s1 >= 0 >= s2, got {} and {}", self.s1, self.s2)));
        }
        let d = crate::linalg::dot(self.n1, self.n2);
        if d.abs() > 1e-9 {
            return Err(LcError::Domain(format!("n1·n2 = {d}, expected orthogonal")));
        }
        Ok(())
    }
}

fn check_unit(n: Vec3) -> Result<()> {
    let r = norm(n);
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(LcError::Domain(format!("|n| = {r}, expected a unit vector")));
    }
    Ok(())
}

fn uniaxial_part(s: f64, n: Vec3) -> Mat3 {
    mat_scale(&mat_sub(&outer(n, n), &mat_scale(&IDENTITY, 1.0 / 3.0)), s)
}

/// `s (n⊗n - I/3)`.
pub fn make_uniaxial(s: f64, n: Vec3) -> Result<Mat3> {
    check_unit(n)?;
    Ok(uniaxial_part(s, n))
}

pub fn make_biaxial(d: &BiaxialDecomposition) -> Result<Mat3> {
    d.validate()?;
    Ok(mat_add(&uniaxial_part(d.s1, d.n1), &uniaxial_part(d.s2, d.n2)))
}

fn check_q(q: &Mat3) -> Result<()> {
    let scale = 1.0 + frob2(q).sqrt();
    for i in 0..3 {
        for j in 0..i {
            if (q[i][j] - q[j][i]).abs() > 1e-9 * scale {
                return Err(LcError::Domain(format!("Q not symmetric at ({i},{j})")));
            }
        }
    }
    if trace(q).abs() > 1e-9 * scale {
        return Err(LcError::Domain(format!("Q has trace {}", trace(q))));
    }
    Ok(())
}

/// Sign convention: the largest-magnitude component is positive.
fn canonical_sign(v: Vec3) -> Vec3 {
    let mut k = 0;
    for i in 1..3 {
        if v[i].abs() > v[k].abs() {
            k = i;
        }
    }
    if v[k] < 0.0 { [-v[0], -v[1], -v[2]] } else { v }
}

/// Eigenvalues sorted descending (stable) with matching eigenvectors.
pub fn sorted_eigen(q: &Mat3) -> (Vec3, [Vec3; 3]) {
    let (vals, vecs) = sym_eigen(q);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    (
        [vals[order[0]], vals[order[1]], vals[order[2]]],
        [vecs[order[0]], vecs[order[1]], vecs[order[2]]],
    )
}

/// Splits Q into `s1 (n1⊗n1 - I/3) + s2 (n2⊗n2 - I/3)`.
///
/// With λ1 ≥ λ2 ≥ λ3: s1 = λ1 - λ2 along the λ1 eigenvector and
/// s2 = λ3 - λ2 along the λ3 eigenvector. When λ2 = λ3 (so s2 = 0) the
/// second eigenvector is used for n2 instead, which gives (e1, e2) for Q = 0.
pub fn decompose(q: &Mat3) -> Result<BiaxialDecomposition> {
    check_q(q)?;
    let (l, v) = sorted_eigen(q);
    let s1 = (l[0] - l[1]).max(0.0);
    let s2 = (l[2] - l[1]).min(0.0);
    let n2 = if s2 == 0.0 { v[1] } else { v[2] };
    Ok(BiaxialDecomposition { s1, n1: canonical_sign(v[0]), s2, n2: canonical_sign(n2) })
}

/// True iff the two closest eigenvalues differ by at most `tol`.
pub fn is_uniaxial(q: &Mat3, tol: f64) -> bool {
    let (l, _) = sorted_eigen(q);
    (l[0] - l[1]).min(l[1] - l[2]) <= tol
}

/// σ(s) = a/2 s² + b/3 s³ + c/4 s⁴.
pub fn bulk_sigma(s: f64, p: &BulkParams) -> f64 {
    let s2 = s * s;
    0.5 * p.a * s2 + p.b / 3.0 * s2 * s + 0.25 * p.c * s2 * s2
}

/// σ'(s).
pub fn bulk_sigma_prime(s: f64, p: &BulkParams) -> f64 {
    p.a * s + p.b * s * s + p.c * s * s * s
}

/// ψ_B(Q) = ā/2 Tr Q² + b̄/3 Tr Q³ + c̄/4 (Tr Q²)².
pub fn bulk_psi(q: &Mat3, p: &BulkParams) -> f64 {
    let q2 = mat_mul(q, q);
    let tr2 = trace(&q2);
    let tr3 = trace(&mat_mul(&q2, q));
    0.5 * p.abar * tr2 + p.bbar / 3.0 * tr3 + 0.25 * p.cbar * tr2 * tr2
}

/// (ā, b̄, c̄) = (3a/2, 9b/2, 9c/4).
pub fn constants_map(a: f64, b: f64, c: f64) -> Result<(f64, f64, f64)> {
    if !(c > 0.0) {
        return Err(LcError::Domain(format!("c must be > 0, got {c}")));
    }
    Ok((1.5 * a, 4.5 * b, 2.25 * c))
}

/// The a at which σ has two global minimizers 0 and s₊ with σ(s₊) = 0.
///
/// σ(s)/s² = a/2 + b s/3 + c s²/4 must have a double root:
/// s₊ = -2b/(3c), a_c = 2b²/(9c).
pub fn critical_bulk(b: f64, c: f64) -> Result<(f64, f64)> {
    if !(b < 0.0) || !(c > 0.0) {
        return Err(LcError::Domain(format!("need b < 0 < c, got b = {b}, c = {c}")));
    }
    Ok((2.0 * b * b / (9.0 * c), -2.0 * b / (3.0 * c)))
}

/// (|s1(n⊗n - I/3) - s2(m⊗m - I/3)|²_F, |s1 - s2|²/6).
pub fn lemma_gap_uniaxial(s1: f64, s2: f64, n: Vec3, m: Vec3) -> Result<(f64, f64)> {
    let d = mat_sub(&make_uniaxial(s1, n)?, &make_uniaxial(s2, m)?);
    Ok((frob2(&d), (s1 - s2).powi(2) / 6.0))
}

/// (|Q1 - Q2|²_F, the biaxial lower bound).
pub fn lemma_gap_biaxial(d1: &BiaxialDecomposition, d2: &BiaxialDecomposition) -> Result<(f64, f64)> {
    let lhs = frob2(&mat_sub(&make_biaxial(d1)?, &make_biaxial(d2)?));
    let p1 = frob2(&mat_sub(&outer(d1.n1, d1.n1), &outer(d2.n1, d2.n1)));
    let p2 = frob2(&mat_sub(&outer(d1.n2, d1.n2), &outer(d2.n2, d2.n2)));
    let rhs = ((d1.s1 - d2.s1).powi(2) + (d1.s2 - d2.s2).powi(2)) / 3.0
        + d1.s1 * d2.s1 * p1
        + d1.s2 * d2.s2 * p2;
    Ok((lhs, rhs))
}
