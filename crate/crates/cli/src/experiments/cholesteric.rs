use std::f64::consts::FRAC_PI_2;

use lcbv_core::analytic::{cholesteric_profile, profile_energy_1d, profile_to_field};
use lcbv_core::energy::{total_energy, ModelParams};
use lcbv_core::fieldcore::io::write_field;
use lcbv_core::fieldcore::{DirectorField, Grid, JumpSet};
use lcbv_core::solver::el_residual;

use super::Experiment;
use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::{Output, Table};
use crate::row;

pub struct Cholesteric1d;

const KEYS: &[Key] = &[
    Key::new("t", Some("1"), "chirality"),
    Key::new("cells", Some("64"), "cells across the unit gap"),
];

fn column(n: usize) -> Result<Grid, CliError> {
    Ok(Grid::boxed([1, 1, n], [0.0; 3], [1.0; 3])?)
}

impl Experiment for Cholesteric1d {
    fn name(&self) -> &'static str {
        "cholesteric1d"
    }

    fn about(&self) -> &'static str {
        "twist-bend profile between e1 and e3 anchoring"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let t = cfg.f64("t")?;
        let n = cfg.usize("cells")?;
        if n < 8 {
            return Err(CliError::Usage("cells must be >= 8".into()));
        }
        let p = cholesteric_profile(t)?;
        let model = ModelParams::new(t, 1.0)?;
        let grid = column(n)?;
        let field = profile_to_field(&p, &grid)?;
        let none = JumpSet::new(grid.clone());
        let naive = DirectorField::from_fn(grid.clone(), |x| {
            let (th, ph) = (FRAC_PI_2 * x[2], t * x[2]);
            [th.cos() * ph.cos(), th.cos() * ph.sin(), th.sin()]
        })?;
        let e = total_energy(&field, &model, Some(&none))?;
        let e_naive = total_energy(&naive, &model, Some(&none))?;

        let mut out = Output::default();
        out.num("t", t);
        out.num("D", p.d);
        out.num("energy_1d", profile_energy_1d(&p));
        out.num("grid_energy", e.total);
        out.num("naive_energy", e_naive.total);
        out.text("below_naive", e.total < e_naive.total);
        let mut res = Vec::new();
        for m in [n, 2 * n, 4 * n] {
            let g = column(m)?;
            let f = profile_to_field(&p, &g)?;
            res.push(el_residual(&f, &JumpSet::new(g), t)?.max);
        }
        for (i, r) in res.iter().enumerate() {
            out.num(&format!("el_residual_{}", n << i), *r);
        }
        out.num("residual_ratio_1", res[0] / res[1]);
        out.num("residual_ratio_2", res[1] / res[2]);

        let mut table = Table::new(&["z", "theta", "phi"]);
        for (z, th) in p.z.iter().zip(&p.theta) {
            table.row(row![*z, *th, p.phi_slope * z]);
        }
        out.file("cholesteric_profile.csv", table.finish());
        out.file("cholesteric_field.lcfield", write_field(&field));
        Ok(out)
    }
}
