use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcbv_core::analytic::{cholesteric_profile, cuboid_critical_k, cuboid_grid, cuboid_minimizer, jump_field, smooth_field};
use lcbv_core::energy::ModelParams;
use lcbv_core::fieldcore::io::{write_field, write_jumps};
use lcbv_core::fieldcore::{DirectorField, Grid};
use lcbv_core::linalg::add;
use lcbv_core::qtensor::BulkParams;
use lcbv_core::solver::{log_csv, project_s2_or_zero, relax, RelaxParams};

use super::Experiment;
use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::Output;

pub struct Relax;

const KEYS: &[Key] = &[
    Key::new("init", Some("interp"), "initial field: interp, smooth, jump or cholesteric"),
    Key::new("K", Some("1"), "jump cost"),
    Key::new("t", Some("0"), "chirality"),
    Key::new("bulk", Some("none"), "none or Ericksen constants a,b,c"),
    Key::new("dims", Some("24,24,32"), "grid cells; z includes the two anchoring layers"),
    Key::new("height", Some("1"), "cell gap"),
    Key::new("l1", Some("0.5"), "half width in x"),
    Key::new("l2", Some("0.5"), "half width in y"),
    Key::new("noise", Some("0"), "amplitude of seeded noise added to free cells"),
    Key::new("step", Some("0"), "gradient step; 0 picks 0.5 / sum of h^-2"),
    Key::new("max_iters", Some("20000"), "iteration cap"),
    Key::new("tol", Some("1e-10"), "energy decrease counted as stalled"),
    Key::new("period", Some("10"), "iterations between jump/zero sweeps"),
    Key::new("dump", Some("true"), "write the relaxed field and jumps"),
];

fn initial(cfg: &RunConfig, grid: &Grid, height: f64) -> Result<DirectorField, CliError> {
    let kind = cfg.str("init")?;
    let f = match kind {
        "interp" => DirectorField::from_fn(grid.clone(), |x| {
            let s = (x[2] / height).clamp(0.0, 1.0);
            project_s2_or_zero([1.0 - s, 0.0, s])
        })?,
        "smooth" => smooth_field(grid, height)?,
        "jump" => jump_field(grid, height, 0.5 * height)?,
        "cholesteric" => {
            let p = cholesteric_profile(cfg.f64("t")?.abs())?;
            DirectorField::from_fn(grid.clone(), |x| {
                let z = (x[2] / height).clamp(0.0, 1.0);
                let (th, ph) = (p.theta_at(z), p.phi_slope * z);
                if z >= 1.0 { [0.0, 0.0, 1.0] } else { [th.cos() * ph.cos(), th.cos() * ph.sin(), th.sin()] }
            })?
        }
        _ => return Err(CliError::Usage(format!("unknown init `{kind}`; known: interp, smooth, jump, cholesteric"))),
    };
    Ok(f)
}

impl Experiment for Relax {
    fn name(&self) -> &'static str {
        "relax"
    }

    fn about(&self) -> &'static str {
        "descent on the discrete energy between e1 and e3 anchoring"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let (k, t) = (cfg.f64("K")?, cfg.f64("t")?);
        let (height, l1, l2) = (cfg.f64("height")?, cfg.f64("l1")?, cfg.f64("l2")?);
        let mut model = ModelParams::new(t, k)?;
        let bulk = cfg.str("bulk")?;
        if bulk != "none" {
            let c = cfg.f64_list("bulk")?;
            if c.len() != 3 {
                return Err(CliError::Usage("bulk must be none or a,b,c".into()));
            }
            model.bulk = Some(BulkParams::from_ericksen(c[0], c[1], c[2])?);
        }
        let grid = cuboid_grid(cfg.dims("dims")?, height, l1, l2)?;
        let mut seed = initial(cfg, &grid, height)?;
        let noise = cfg.f64("noise")?;
        if noise > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for p in 0..grid.len() {
                let d = [rng.gen_range(-noise..noise), rng.gen_range(-noise..noise), rng.gen_range(-noise..noise)];
                if !seed.fixed[p] && !seed.is_zero(p) {
                    seed.values[p] = project_s2_or_zero(add(seed.values[p], d));
                }
            }
        }
        let mut params = RelaxParams::new(seed);
        let step = cfg.f64("step")?;
        if step > 0.0 {
            params.step = step;
        }
        params.max_iters = cfg.usize("max_iters")?;
        params.tol = cfg.f64("tol")?;
        params.jump_update_period = cfg.usize("period")?;
        let r = relax(&params, &model)?;

        let mut out = Output::default();
        out.num("K", k);
        out.num("t", t);
        out.num("critical_K", cuboid_critical_k(height));
        if t == 0.0 && model.bulk.is_none() {
            let sol = cuboid_minimizer(k, height, l1, l2)?;
            out.text("expected_branch", sol.branch.name());
            out.num("expected_energy", sol.energy);
            out.num("relative_error", (r.breakdown.total - sol.energy).abs() / sol.energy);
        }
        out.text("iterations", r.iterations);
        out.text("converged", r.converged);
        out.num("gradient_term", r.breakdown.gradient);
        out.num("twist_term", r.breakdown.twist);
        out.num("norm_term", r.breakdown.norm);
        out.num("bulk_term", r.breakdown.bulk);
        out.num("jump_term", r.breakdown.jump);
        out.num("total", r.breakdown.total);
        out.num("reference_total", r.reference.total);
        out.text("jump_facets", r.jumps.len());
        out.file("relax_log.csv", log_csv(&r.log));
        if cfg.bool("dump")? {
            out.file("relax_field.lcfield", write_field(&r.field));
            out.file("relax_jumps.lcjumps", write_jumps(&r.jumps));
        }
        Ok(out)
    }
}
