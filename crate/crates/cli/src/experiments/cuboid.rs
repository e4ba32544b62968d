use lcbv_core::analytic::{cuboid_critical_k, cuboid_grid, cuboid_minimizer};
use lcbv_core::energy::{total_energy_with, ModelParams};
use lcbv_core::fieldcore::io::{write_field, write_jumps};
use lcbv_core::fieldcore::{detect_jumps, DEFAULT_ANGLE_THRESHOLD};

use super::{jump_measure, Experiment, MEASURE_KEY};
use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::{Output, Table};
use crate::row;

pub struct Cuboid;

const KEYS: &[Key] = &[
    MEASURE_KEY,
    Key::new("K", Some("1"), "jump cost"),
    Key::new("height", Some("1"), "cell gap d"),
    Key::new("l1", Some("0.5"), "half width in x"),
    Key::new("l2", Some("0.5"), "half width in y"),
    Key::new("dims", Some("8,8,32"), "grid for the minimizer dump"),
    Key::new("dump", Some("true"), "write the minimizer and its jumps"),
    Key::multi("sweep", 4, "PARAM START STOP STEPS with PARAM K or height"),
];

impl Experiment for Cuboid {
    fn name(&self) -> &'static str {
        "cuboid"
    }

    fn about(&self) -> &'static str {
        "smooth against jump branch between e1 and e3 anchoring"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let measure = jump_measure(cfg)?;
        let (k, height, l1, l2) = (cfg.f64("K")?, cfg.f64("height")?, cfg.f64("l1")?, cfg.f64("l2")?);
        let sol = cuboid_minimizer(k, height, l1, l2)?;
        let mut out = Output::default();
        out.num("K", k);
        out.num("height", height);
        out.num("critical_K", cuboid_critical_k(height));
        out.num("smooth_energy", sol.smooth_energy);
        out.num("jump_energy", sol.jump_energy);
        out.text("branch", sol.branch.name());
        out.num("energy", sol.energy);

        if let Some(sw) = cfg.sweep()? {
            if sw.param != "K" && sw.param != "height" {
                return Err(CliError::Usage(format!("cuboid sweeps K or height, not `{}`", sw.param)));
            }
            let mut table = Table::new(&["K", "height", "smooth_energy", "jump_energy", "difference", "branch"]);
            let mut prev: Option<(f64, f64)> = None;
            let mut bracket = None;
            for x in sw.values() {
                let (kk, hh) = if sw.param == "K" { (x, height) } else { (k, x) };
                let s = cuboid_minimizer(kk, hh, l1, l2)?;
                let diff = s.smooth_energy - s.jump_energy;
                table.row(row![kk, hh, s.smooth_energy, s.jump_energy, diff, s.branch.name()]);
                if let Some((px, pd)) = prev {
                    if bracket.is_none() && (pd == 0.0 || pd.signum() != diff.signum()) {
                        bracket = Some((px, x));
                    }
                }
                prev = Some((x, diff));
            }
            out.file("cuboid_sweep.csv", table.finish());
            match bracket {
                Some((a, b)) => {
                    out.num("crossover_lo", a.min(b));
                    out.num("crossover_hi", a.max(b));
                }
                None => out.text("crossover", "none"),
            }
        }

        if cfg.bool("dump")? {
            let grid = cuboid_grid(cfg.dims("dims")?, height, l1, l2)?;
            let field = sol.field(&grid)?;
            let jumps = detect_jumps(&field, DEFAULT_ANGLE_THRESHOLD)?;
            let e = total_energy_with(&field, &ModelParams::new(0.0, k)?, Some(&jumps), measure.as_ref())?;
            out.num("grid_energy", e.total);
            out.file("cuboid_field.lcfield", write_field(&field));
            out.file("cuboid_jumps.lcjumps", write_jumps(&jumps));
        }
        Ok(out)
    }
}
