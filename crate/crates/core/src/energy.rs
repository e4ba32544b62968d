//! Energy densities (Oseen–Frank, Ericksen, Landau–de Gennes, biaxial Ericksen)
//! and the discrete SBV energy with a jump-area cost.

use std::fmt;

use crate::error::{LcError, Result};
use crate::fieldcore::io::fmt17;
use crate::fieldcore::{detect_jumps, DirectorField, JumpMeasure, JumpSet, NormalWeighted, StencilMap, DEFAULT_ANGLE_THRESHOLD};
use crate::linalg::{cross, dot, frob2, levi, norm, Mat3, Vec3};
use crate::qtensor::{bulk_psi, bulk_sigma, make_biaxial, BiaxialDecomposition, BulkParams};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub t: f64,
    pub k: f64,
    pub bulk: Option<BulkParams>,
}

impl ModelParams {
    pub fn new(t: f64, k: f64) -> Result<Self> {
        if !(k > 0.0) || !t.is_finite() {
            return Err(LcError::Domain(format!("need K > 0 and finite t, got K = {k}, t = {t}")));
        }
        Ok(ModelParams { t, k, bulk: None })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EnergyBreakdown {
    pub gradient: f64,
    pub twist: f64,
    pub norm: f64,
    pub bulk: f64,
    pub jump: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn from_terms(gradient: f64, twist: f64, norm: f64, bulk: f64, jump: f64) -> Self {
        EnergyBreakdown { gradient, twist, norm, bulk, jump, total: gradient + twist + norm + bulk + jump }
    }

    /// Everything except the jump term.
    pub fn elastic(&self) -> f64 {
        self.gradient + self.twist + self.norm + self.bulk
    }
}

impl fmt::Display for EnergyBreakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gradient={} twist={} norm={} bulk={} jump={} total={}",
            fmt17(self.gradient),
            fmt17(self.twist),
            fmt17(self.norm),
            fmt17(self.bulk),
            fmt17(self.jump),
            fmt17(self.total)
        )
    }
}

/// `(curl n)_j = ε_jab ∂_a n_b` from `g[b][a] = ∂_a n_b`.
#[inline]
pub fn curl(g: &Mat3) -> Vec3 {
    [g[2][1] - g[1][2], g[0][2] - g[2][0], g[1][0] - g[0][1]]
}

/// The three Oseen–Frank pieces: (|∇n|², 2t n·curl n, t²|n|²).
#[inline]
pub fn of_parts(n: Vec3, g: &Mat3, t: f64) -> (f64, f64, f64) {
    (frob2(g), 2.0 * t * dot(n, curl(g)), t * t * dot(n, n))
}

/// |∇n|² + 2t n·curl n + t²|n|².
pub fn of_density(n: Vec3, g: &Mat3, t: f64) -> f64 {
    let (a, b, c) = of_parts(n, g, t);
    a + b + c
}

/// 2s²(|∇n|² + 2t n·curl n + t²) + ⅔|∇s|² + σ(s).
pub fn ericksen_density(s: f64, grad_s: Vec3, n: Vec3, grad_n: &Mat3, t: f64, bulk: Option<&BulkParams>) -> f64 {
    let (a, b, _) = of_parts(n, grad_n, t);
    let sigma = bulk.map_or(0.0, |p| bulk_sigma(s, p));
    2.0 * s * s * (a + b + t * t) + 2.0 / 3.0 * dot(grad_s, grad_s) + sigma
}

/// `(∇×Q)_ij = Σ ε_jab ∂_a Q_ib`, with `dq[a] = ∂_a Q`.
pub fn curl_q(dq: &[Mat3; 3]) -> Mat3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    let e = levi(j, a, b);
                    if e != 0.0 {
                        acc += e * dq[a][i][b];
                    }
                }
            }
            c[i][j] = acc;
        }
    }
    c
}

/// |∇Q|² + 4t Q·curl Q + 3t²|Q|² + ψ_B(Q), with `dq[a] = ∂_a Q`.
pub fn landau_density(q: &Mat3, dq: &[Mat3; 3], t: f64, bulk: Option<&BulkParams>) -> f64 {
    let grad2: f64 = dq.iter().map(frob2).sum();
    let c = curl_q(dq);
    let qc: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| q[i][j] * c[i][j]).sum();
    grad2 + 4.0 * t * qc + 3.0 * t * t * frob2(q) + bulk.map_or(0.0, |p| bulk_psi(q, p))
}

/// Gradients of the biaxial variables: `gs*[a] = ∂_a s*`, `gn[i][a] = ∂_a n_i`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BiaxialGrads {
    pub gs1: Vec3,
    pub gs2: Vec3,
    pub gn: Mat3,
    pub gm: Mat3,
}

/// `(vᵀ∇u)_k = Σ_i v_i ∂_k u_i`.
fn contract(v: Vec3, g: &Mat3) -> Vec3 {
    let mut out = [0.0; 3];
    for k in 0..3 {
        out[k] = (0..3).map(|i| v[i] * g[i][k]).sum();
    }
    out
}

/// The biaxial Ericksen integrand; σ̃(s1, s2) = ψ_B of the biaxial tensor.
pub fn biaxial_ericksen_density(
    s1: f64,
    s2: f64,
    n: Vec3,
    m: Vec3,
    g: &BiaxialGrads,
    t: f64,
    bulk: Option<&BulkParams>,
) -> f64 {
    let (an, bn, _) = of_parts(n, &g.gn, t);
    let (am, bm, _) = of_parts(m, &g.gm, t);
    let nxm = cross(n, m);
    let a = contract(m, &g.gn);
    let b = contract(n, &g.gm);
    let mut c1 = 0.0;
    let mut c2 = 0.0;
    for k in 0..3 {
        c1 += (a[k] - t * nxm[k]).powi(2);
        c2 += (b[k] + t * nxm[k]).powi(2);
    }
    let sigma = match bulk {
        Some(p) if n != [0.0; 3] && m != [0.0; 3] => {
            let d = BiaxialDecomposition { s1, n1: n, s2, n2: m };
            make_biaxial(&d).map(|q| bulk_psi(&q, p)).unwrap_or(f64::NAN)
        }
        _ => 0.0,
    };
    let ds: Vec3 = [g.gs1[0] - g.gs2[0], g.gs1[1] - g.gs2[1], g.gs1[2] - g.gs2[2]];
    2.0 * s1 * s1 * (an + bn + t * t) + 2.0 * s2 * s2 * (am + bm + t * t) + sigma
        - 2.0 * s1 * s2 * (c1 + c2 - t * t)
        + dot(ds, ds) / 3.0
        + (dot(g.gs1, g.gs1) + dot(g.gs2, g.gs2)) / 3.0
}

/// (|∇v|² + 2t v·curl v + t²|v|², Σ(v_i,j - t Σ_k ε_ijk v_k)² - t²|v|²).
pub fn twist_completion_check(v: Vec3, g: &Mat3, t: f64) -> (f64, f64) {
    let lhs = of_density(v, g, t);
    let mut sq = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let e: f64 = (0..3).map(|k| levi(i, j, k) * v[k]).sum();
            sq += (g[i][j] - t * e).powi(2);
        }
    }
    (lhs, sq - t * t * dot(v, v))
}

/// Discrete SBV energy with automatically detected jumps.
pub fn total_energy(field: &DirectorField, params: &ModelParams, jumps: Option<&JumpSet>) -> Result<EnergyBreakdown> {
    total_energy_with(field, params, jumps, &NormalWeighted::default())
}

/// Discrete SBV energy: midpoint sum of the Oseen–Frank density over free
/// cells plus K times the measure of the jump facets that touch a free cell.
pub fn total_energy_with(
    field: &DirectorField,
    params: &ModelParams,
    jumps: Option<&JumpSet>,
    measure: &dyn JumpMeasure,
) -> Result<EnergyBreakdown> {
    let detected;
    let js = match jumps {
        Some(j) => j,
        None => {
            detected = detect_jumps(field, DEFAULT_ANGLE_THRESHOLD)?;
            &detected
        }
    };
    let grid = &field.grid;
    let map = StencilMap::new(grid, js)?;
    let vol = grid.cell_volume();
    let (mut eg, mut et, mut en, mut eb) = (0.0, 0.0, 0.0, 0.0);
    for p in 0..grid.len() {
        if field.fixed[p] {
            continue;
        }
        let n = field.values[p];
        let g = map.grad_at(&field.values, p);
        let (a, b, c) = of_parts(n, &g, params.t);
        eg += a * vol;
        et += b * vol;
        en += c * vol;
        if let Some(bp) = &params.bulk {
            eb += bulk_sigma(norm(n), bp) * vol;
        }
    }
    let weights = measure.facet_weights(js);
    let mut area = 0.0;
    for (f, w) in js.facets().zip(weights) {
        let q = grid.plus(f.cell, f.axis).expect("facet has a neighbor");
        if !(field.fixed[f.cell] && field.fixed[q]) {
            area += w;
        }
    }
    let e = EnergyBreakdown::from_terms(eg, et, en, eb, params.k * area);
    if !e.total.is_finite() {
        return Err(LcError::Numeric(format!("non-finite energy {e}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::Grid;
    use crate::qtensor::make_uniaxial;
    use std::f64::consts::PI;

    fn helix_grad(t: f64, z: f64) -> (Vec3, Mat3) {
        let n = [(t * z).cos(), (t * z).sin(), 0.0];
        let mut g = [[0.0; 3]; 3];
        g[0][2] = -t * (t * z).sin();
        g[1][2] = t * (t * z).cos();
        (n, g)
    }

    #[test]
    fn of_examples() {
        assert_eq!(of_density([0.0, 0.0, 1.0], &[[0.0; 3]; 3], 0.0), 0.0);
        assert_eq!(of_density([0.0; 3], &[[0.0; 3]; 3], 3.0), 0.0);
        for &(t, z) in &[(1.0, 0.3), (2.5, -1.0), (-0.7, 0.9)] {
            let (n, g) = helix_grad(t, z);
            assert!(of_density(n, &g, t).abs() < 1e-14);
            assert!((dot(n, curl(&g)) + t).abs() < 1e-14);
        }
    }

    #[test]
    fn ericksen_examples() {
        let p = BulkParams::from_ericksen(-1.0, 0.5, 2.0).unwrap();
        assert_eq!(ericksen_density(0.0, [0.0; 3], [1.0, 0.0, 0.0], &[[0.0; 3]; 3], 1.0, Some(&p)), 0.0);
        let (n, mut g) = helix_grad(1.3, 0.2);
        g[2][0] = 0.4;
        let e = ericksen_density(1.0, [0.0; 3], n, &g, 0.6, None);
        assert!((e - 2.0 * of_density(n, &g, 0.6)).abs() < 1e-13);
        let (n, g) = helix_grad(0.8, 0.7);
        assert!(ericksen_density(1.7, [0.0; 3], n, &g, 0.8, None).abs() < 1e-13);
    }

    #[test]
    fn landau_examples() {
        let p = BulkParams::from_ericksen(-1.0, 0.5, 2.0).unwrap();
        let z = [[[0.0; 3]; 3]; 3];
        assert_eq!(landau_density(&[[0.0; 3]; 3], &z, 2.0, Some(&p)), 0.0);
        let q = make_uniaxial(0.6, [0.0, 0.6, 0.8]).unwrap();
        assert!((landau_density(&q, &z, 0.0, Some(&p)) - bulk_psi(&q, &p)).abs() < 1e-15);
    }

    #[test]
    fn biaxial_reduces_when_s2_zero() {
        let (n, g) = helix_grad(1.1, 0.4);
        let m = [0.0, 0.0, 1.0];
        let gs1 = [0.2, -0.1, 0.5];
        let bg = BiaxialGrads { gs1, gs2: [0.0; 3], gn: g, gm: [[0.0; 3]; 3] };
        let b = biaxial_ericksen_density(0.9, 0.0, n, m, &bg, 0.5, None);
        let e = ericksen_density(0.9, gs1, n, &g, 0.5, None);
        assert!((b - e).abs() < 1e-13);
    }

    #[test]
    fn completion_examples() {
        assert_eq!(twist_completion_check([0.0; 3], &[[0.0; 3]; 3], 1.0), (0.0, 0.0));
        let (n, g) = helix_grad(2.0, 0.1);
        let (l, r) = twist_completion_check(n, &g, 2.0);
        assert!(l.abs() < 1e-13 && r.abs() < 1e-13);
    }

    #[test]
    fn cuboid_branches_energy() {
        let (l1, l2, d) = (0.5, 0.5, 1.0);
        let g = Grid::boxed([4, 4, 64], [-l1, -l2, 0.0], [l1, l2, d]).unwrap();
        let f = DirectorField::from_fn(g.clone(), |x| {
            let a = PI * x[2] / (2.0 * d);
            [a.cos(), 0.0, a.sin()]
        })
        .unwrap();
        let p = ModelParams::new(0.0, 1.0).unwrap();
        let e = total_energy(&f, &p, None).unwrap();
        let exact = PI * PI * l1 * l2 / d;
        assert!((e.total / exact - 1.0).abs() < 0.01, "{e}");
        assert_eq!(e.jump, 0.0);

        let f = DirectorField::from_fn(g, |x| if x[2] < 0.5 * d { [1.0, 0.0, 0.0] } else { [0.0, 0.0, 1.0] }).unwrap();
        let p = ModelParams::new(0.0, 1.7).unwrap();
        let e = total_energy(&f, &p, None).unwrap();
        assert!((e.total - 4.0 * 1.7 * l1 * l2).abs() < 1e-12, "{e}");
    }

    #[test]
    fn breakdown_sums_and_formats() {
        let e = EnergyBreakdown::from_terms(1.0, -0.5, 0.25, 0.0, 2.0);
        assert_eq!(e.total, 2.75);
        assert_eq!(
            e.to_string(),
            "gradient=1.0000000000000000e0 twist=-5.0000000000000000e-1 norm=2.5000000000000000e-1 bulk=0.0000000000000000e0 jump=2.0000000000000000e0 total=2.7500000000000000e0"
        );
    }

    #[test]
    fn model_params_validated() {
        assert!(ModelParams::new(0.0, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0).is_err());
    }
}
