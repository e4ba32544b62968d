use lcbv_core::analytic::{curvature_jump_residual, hedgehog, hedgehog_field};
use lcbv_core::energy::{total_energy_with, ModelParams};
use lcbv_core::fieldcore::io::{write_field, write_jumps};
use lcbv_core::fieldcore::{detect_jumps, Grid, DEFAULT_ANGLE_THRESHOLD};

use super::{jump_measure, Experiment, MEASURE_KEY};
use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::Output;

pub struct Hedgehog;

const KEYS: &[Key] = &[
    MEASURE_KEY,
    Key::new("K", Some("2"), "jump cost; core radius 1/K"),
    Key::new("dim", Some("3"), "2 or 3"),
    Key::new("cells", Some("64"), "cells per side of [-1, 1]^dim"),
    Key::new("dump", Some("true"), "write the field and jump set"),
];

impl Experiment for Hedgehog {
    fn name(&self) -> &'static str {
        "hedgehog"
    }

    fn about(&self) -> &'static str {
        "radial field with an isotropic core: closed form against grid quadrature"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let measure = jump_measure(cfg)?;
        let k = cfg.f64("K")?;
        let dim = cfg.usize("dim")?;
        let n = cfg.usize("cells")?;
        if !(dim == 2 || dim == 3) {
            return Err(CliError::Usage("dim must be 2 or 3".into()));
        }
        if n < 4 {
            return Err(CliError::Usage("cells must be >= 4".into()));
        }
        let sol = hedgehog(k, dim)?;
        let grid = if dim == 3 {
            Grid::boxed([n, n, n], [-1.0; 3], [1.0; 3])?
        } else {
            Grid::boxed([n, n, 1], [-1.0, -1.0, 0.0], [1.0, 1.0, 1.0])?
        };
        let field = hedgehog_field(k, dim, &grid)?;
        let jumps = detect_jumps(&field, DEFAULT_ANGLE_THRESHOLD)?;
        let e = total_energy_with(&field, &ModelParams::new(0.0, k)?, Some(&jumps), measure.as_ref())?;
        let mut out = Output::default();
        out.num("K", k);
        out.text("dim", dim);
        out.text("cells", n);
        out.num("formula", sol.energy_formula);
        out.num("sobolev", sol.sobolev_energy);
        out.num("gap", sol.sobolev_energy - sol.energy_formula);
        out.num("quadrature", e.total);
        out.num("quadrature_elastic", e.elastic());
        out.num("quadrature_jump", e.jump);
        out.num("relative_error", (e.total - sol.energy_formula).abs() / sol.energy_formula.abs());
        out.num("curvature_jump_residual", curvature_jump_residual(k, dim));
        if cfg.bool("dump")? {
            out.file("hedgehog_field.lcfield", write_field(&field));
            out.file("hedgehog_jumps.lcjumps", write_jumps(&jumps));
        }
        Ok(out)
    }
}
