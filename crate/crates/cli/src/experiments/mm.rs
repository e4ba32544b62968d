use lcbv_core::analytic::{modica_mortola_1d, well_by_name, WELL_NAMES};

use super::Experiment;
use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::{Output, Table};
use crate::row;

pub struct Mm1d;

const KEYS: &[Key] = &[
    Key::new("eps", Some("0.01"), "interface width"),
    Key::new("well", Some("quartic"), "double well: quartic, zero or landau"),
    Key::new("cells", Some("0"), "cells on [0, 1]; 0 picks max(200, 20/eps)"),
    Key::multi("sweep", 4, "eps START STOP STEPS"),
];

fn cells_for(eps: f64, cells: usize) -> usize {
    if cells > 0 { cells } else { 200usize.max((20.0 / eps).ceil() as usize) }
}

impl Experiment for Mm1d {
    fn name(&self) -> &'static str {
        "mm1d"
    }

    fn about(&self) -> &'static str {
        "one-dimensional phase-field minimizer against its sharp-interface limit"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let eps = cfg.f64("eps")?;
        let name = cfg.str("well")?;
        let well = well_by_name(name)
            .ok_or_else(|| CliError::Usage(format!("unknown well `{name}`; known: {}", WELL_NAMES.join(", "))))?;
        let cells = cfg.usize("cells")?;
        if !(eps > 0.0) {
            return Err(CliError::Usage("eps must be > 0".into()));
        }
        let r = modica_mortola_1d(eps, well.as_ref(), cells_for(eps, cells))?;
        let mut out = Output::default();
        out.text("well", well.name());
        out.num("eps", eps);
        out.text("cells", r.minimizer.values.len() - 1);
        out.num("energy", r.energy);
        out.num("limit_constant", r.limit_constant);
        out.num("ratio", r.energy / r.limit_constant);
        out.text("iterations", r.iterations);
        out.num("grad_norm", r.grad_norm);
        let g = &r.minimizer.grid;
        let mut table = Table::new(&["x", "v"]);
        for (i, v) in r.minimizer.values.iter().enumerate() {
            table.row(row![g.center(i)[0], *v]);
        }
        out.file("mm1d_profile.csv", table.finish());

        if let Some(sw) = cfg.sweep()? {
            if sw.param != "eps" {
                return Err(CliError::Usage(format!("mm1d sweeps eps, not `{}`", sw.param)));
            }
            let mut table = Table::new(&["eps", "cells", "energy", "limit_constant", "ratio"]);
            for e in sw.values() {
                if !(e > 0.0) {
                    return Err(CliError::Usage("swept eps must be > 0".into()));
                }
                let s = modica_mortola_1d(e, well.as_ref(), cells_for(e, cells))?;
                table.row(row![e, s.minimizer.values.len() - 1, s.energy, s.limit_constant, s.energy / s.limit_constant]);
            }
            out.file("mm1d_sweep.csv", table.finish());
        }
        Ok(out)
    }
}
