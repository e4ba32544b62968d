//! Randomized checks of the tensor and energy identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcbv_core::energy::{ericksen_density, landau_density, twist_completion_check};
use lcbv_core::fieldcore::{gradient_director, gradient_qtensor, gradient_scalar, DirectorField, Grid, JumpSet, QTensorField, ScalarField};
use lcbv_core::linalg::{cross, norm, scale, Mat3, Vec3};
use lcbv_core::qtensor::{bulk_psi, bulk_sigma, lemma_gap_biaxial, lemma_gap_uniaxial, make_uniaxial, BiaxialDecomposition, BulkParams};

use super::Experiment;
use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::{Output, Table};
use crate::row;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Smallest slack to the threshold over all samples (negative on failure),
    /// or the smallest refinement ratio for the convergence check.
    pub worst: f64,
    pub samples: usize,
}

pub const CHECK_NAMES: [&str; 5] = ["bulk_consistency", "uniaxial_gap", "biaxial_gap", "density_identity", "twist_completion"];

fn rng_for(seed: u64, check: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(check as u64 + 1);
    r
}

fn unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let r = norm(v);
        if r > 0.1 && r <= 1.0 {
            return scale(v, 1.0 / r);
        }
    }
}

fn perp_unit(rng: &mut impl Rng, n: Vec3) -> Vec3 {
    loop {
        let c = cross(n, unit(rng));
        let r = norm(c);
        if r > 0.1 {
            return scale(c, 1.0 / r);
        }
    }
}

/// ψ_B(s(n⊗n - I/3)) against σ(s) for random constants and states.
pub fn check_bulk(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 0);
    let mut worst = f64::INFINITY;
    for i in 0..samples {
        let p = if i % 2 == 0 {
            BulkParams::measured_critical()
        } else {
            BulkParams::from_ericksen(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.1..3.0)).unwrap()
        };
        let s = rng.gen_range(-2.0..2.0);
        let q = make_uniaxial(s, unit(&mut rng)).unwrap();
        let sig = bulk_sigma(s, &p);
        let slack = 1e-9 - (bulk_psi(&q, &p) - sig).abs() / (1.0 + sig.abs());
        worst = worst.min(slack);
    }
    CheckOutcome { name: CHECK_NAMES[0], passed: worst >= 0.0, worst, samples }
}

pub fn check_uniaxial_gap(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 1);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let (s1, s2) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let (n, m) = (unit(&mut rng), unit(&mut rng));
        let (lhs, rhs) = lemma_gap_uniaxial(s1, s2, n, m).unwrap();
        worst = worst.min(lhs - rhs);
    }
    CheckOutcome { name: CHECK_NAMES[1], passed: worst >= -1e-12, worst, samples }
}

fn biaxial(rng: &mut impl Rng) -> BiaxialDecomposition {
    let n1 = unit(rng);
    let n2 = perp_unit(rng, n1);
    BiaxialDecomposition { s1: rng.gen_range(0.0..5.0), n1, s2: rng.gen_range(-5.0..0.0), n2 }
}

pub fn check_biaxial_gap(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 2);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let (d1, d2) = (biaxial(&mut rng), biaxial(&mut rng));
        let (lhs, rhs) = lemma_gap_biaxial(&d1, &d2).unwrap();
        worst = worst.min(lhs - rhs);
    }
    CheckOutcome { name: CHECK_NAMES[2], passed: worst >= -1e-12, worst, samples }
}

fn synthetic_s(x: Vec3) -> f64 {
    0.5 + 0.2 * (2.0 * x[0]).sin() * (1.5 * x[1] + 0.3).cos() + 0.1 * x[2]
}

fn synthetic_n(x: Vec3) -> Vec3 {
    let th = 0.8 + 0.6 * x[2] + 0.3 * (x[0] * x[1]);
    let ph = 1.1 * x[0] - 0.7 * x[1] + 0.4 * x[2] * x[2];
    [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]
}

/// Max |Landau - Ericksen| over cells of an n³ grid on [0, 1]³ whose
/// centers lie in the middle half [1/4, 3/4]³.
pub fn density_gap(n: usize, t: f64, bulk: &BulkParams) -> Result<f64, CliError> {
    let grid = Grid::boxed([n, n, n], [0.0; 3], [1.0; 3])?;
    let none = JumpSet::new(grid.clone());
    let qf = QTensorField::from_fn(grid.clone(), |x| make_uniaxial(synthetic_s(x), synthetic_n(x)).expect("unit n"))?;
    let sf = ScalarField::from_fn(grid.clone(), synthetic_s)?;
    let nf = DirectorField::from_fn(grid.clone(), synthetic_n)?;
    let gq = gradient_qtensor(&qf, &none)?;
    let gs = gradient_scalar(&sf, &none)?;
    let gn = gradient_director(&nf, &none)?;
    let mut worst: f64 = 0.0;
    for p in 0..grid.len() {
        if grid.center(p).iter().any(|&c| !(0.25..=0.75).contains(&c)) {
            continue;
        }
        let mut dq = [[[0.0; 3]; 3]; 3];
        for (a, d) in dq.iter_mut().enumerate() {
            let c: [f64; 5] = std::array::from_fn(|k| gq[p][k][a]);
            *d = QTensorField::unpack(&c);
        }
        let q: Mat3 = qf.tensor(p);
        let l = landau_density(&q, &dq, t, Some(bulk));
        let e = ericksen_density(sf.values[p], gs[p], nf.values[p], &gn[p], t, Some(bulk));
        worst = worst.max((l - e).abs());
    }
    Ok(worst)
}

/// Three refinements from `base` cells; passes when every halving of h
/// shrinks the gap by at least 3.5. `worst` is the smallest ratio.
pub fn check_density_identity(base: usize) -> Result<CheckOutcome, CliError> {
    let bulk = BulkParams::from_ericksen(-0.5, -1.0, 1.0)?;
    let gaps: Vec<f64> = (0..4).map(|i| density_gap(base << i, 0.7, &bulk)).collect::<Result<_, _>>()?;
    let worst = gaps.windows(2).map(|w| w[0] / w[1]).fold(f64::INFINITY, f64::min);
    Ok(CheckOutcome { name: CHECK_NAMES[3], passed: worst >= 3.5, worst, samples: 4 })
}

pub fn check_twist_completion(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 4);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let v: Vec3 = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let g: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3.0..3.0)));
        let t = rng.gen_range(-5.0..5.0);
        let (lhs, rhs) = twist_completion_check(v, &g, t);
        worst = worst.min(1e-12 - (lhs - rhs).abs() / (1.0 + lhs.abs()));
    }
    CheckOutcome { name: CHECK_NAMES[4], passed: worst >= 0.0, worst, samples }
}

pub struct Verify;

const KEYS: &[Key] = &[
    Key::new("samples", Some("100000"), "random samples per check"),
    Key::new("cells", Some("8"), "coarsest grid of the density refinement"),
];

impl Experiment for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }

    fn about(&self) -> &'static str {
        "randomized checks of the tensor and energy identities"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let samples = cfg.usize("samples")?;
        let cells = cfg.usize("cells")?;
        if samples == 0 {
            return Err(CliError::Usage("samples must be >= 1".into()));
        }
        if cells < 4 {
            return Err(CliError::Usage("cells must be >= 4".into()));
        }
        let checks = [
            check_bulk(samples, cfg.seed),
            check_uniaxial_gap(samples, cfg.seed),
            check_biaxial_gap(samples, cfg.seed),
            check_density_identity(cells)?,
            check_twist_completion(samples, cfg.seed),
        ];
        let mut table = Table::new(&["check", "passed", "worst", "samples"]);
        let mut out = Output::default();
        for c in &checks {
            table.row(row![c.name, c.passed, c.worst, c.samples]);
            out.text(&format!("{}_passed", c.name), c.passed);
            out.num(&format!("{}_worst", c.name), c.worst);
        }
        out.text("checks", checks.len());
        out.file("verify.csv", table.finish());
        if let Some(bad) = checks.iter().find(|c| !c.passed) {
            out.text("first_failure", bad.name);
        }
        Ok(out)
    }

    fn failure(&self, out: &Output) -> Option<String> {
        out.get("first_failure").map(|s| s.to_string())
    }
}
