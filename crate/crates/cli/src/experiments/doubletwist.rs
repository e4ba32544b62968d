use lcbv_core::analytic::{count_bounds, cylinder_elastic_energy, cylinder_energy_per_length, double_twist_field, double_twist_lattice, lattice_energy};
use lcbv_core::energy::{total_energy_with, ModelParams};
use lcbv_core::fieldcore::io::{write_field, write_jumps};
use lcbv_core::fieldcore::{detect_jumps, DEFAULT_ANGLE_THRESHOLD};

use super::{jump_measure, Experiment, MEASURE_KEY};
use crate::config::{Key, RunConfig, Sweep};
use crate::error::CliError;
use crate::output::{Output, Table};
use crate::row;

pub struct DoubleTwist;

const KEYS: &[Key] = &[
    MEASURE_KEY,
    Key::new("K", Some("1"), "jump cost"),
    Key::new("l1", Some("0.5"), "half width in x"),
    Key::new("l2", Some("0.5"), "half length along the cylinder axis"),
    Key::new("height", Some("1"), "cell gap"),
    Key::new("cells", Some("128"), "grid cells per side for the grid check"),
    Key::new("quad_cells", Some("160"), "cells across one cylinder for its quadrature"),
    Key::new("dump", Some("true"), "write the lattice field at the reported t"),
    Key::multi("sweep", 4, "t START STOP STEPS (default t 3.2 40 3681)"),
];

impl Experiment for DoubleTwist {
    fn name(&self) -> &'static str {
        "doubletwist"
    }

    fn about(&self) -> &'static str {
        "lattice of double-twist cylinders: energy sign against chirality"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let measure = jump_measure(cfg)?;
        let (k, l1, l2, height) = (cfg.f64("K")?, cfg.f64("l1")?, cfg.f64("l2")?, cfg.f64("height")?);
        let sweep = cfg.sweep()?.unwrap_or(Sweep { param: "t".into(), start: 3.2, stop: 40.0, steps: 3681 });
        if sweep.param != "t" {
            return Err(CliError::Usage(format!("doubletwist sweeps t, not `{}`", sweep.param)));
        }
        let mut table = Table::new(&[
            "t", "count", "lower_bound", "upper_bound", "arrangement", "per_cylinder", "elastic", "jump_area", "total",
        ]);
        let mut first_negative = None;
        let mut bounds_ok = true;
        for t in sweep.values() {
            let lat = double_twist_lattice(t, l1, l2, height)?;
            let e = lattice_energy(&lat, k);
            let (lo, hi) = count_bounds(t, l1, height);
            bounds_ok &= lo <= lat.count && lat.count <= hi;
            table.row(row![t, lat.count, lo, hi, lat.arrangement.as_str(), e.per_cylinder, e.elastic, e.jump_area, e.total]);
            if first_negative.is_none() && e.total < 0.0 {
                first_negative = Some(t);
            }
        }
        let mut out = Output::default();
        out.num("K", k);
        out.num("energy_per_length", cylinder_energy_per_length());
        out.text("bounds_ok", bounds_ok);
        out.file("doubletwist_sweep.csv", table.finish());
        let Some(t) = first_negative else {
            out.text("smallest_negative_t", "none");
            return Ok(out);
        };
        let lat = double_twist_lattice(t, l1, l2, height)?;
        let e = lattice_energy(&lat, k);
        let (lo, hi) = count_bounds(t, l1, height);
        out.num("smallest_negative_t", t);
        out.text("count", lat.count);
        out.text("lower_bound", lo);
        out.text("upper_bound", hi);
        out.text("arrangement", &lat.arrangement);
        out.num("per_cylinder", e.per_cylinder);
        out.num("total", e.total);
        let quad = cylinder_elastic_energy(t, 2.0 * l2, cfg.usize("quad_cells")?)?;
        out.num("per_cylinder_quadrature", quad);

        let n = cfg.usize("cells")?;
        let grid = lat.grid(n, n)?;
        let field = double_twist_field(&lat, &grid)?;
        let jumps = detect_jumps(&field, DEFAULT_ANGLE_THRESHOLD)?;
        let g = total_energy_with(&field, &ModelParams::new(t, k)?, Some(&jumps), measure.as_ref())?;
        out.num("grid_elastic", g.elastic());
        out.num("grid_jump", g.jump);
        out.num("grid_total", g.total);
        if cfg.bool("dump")? {
            out.file("doubletwist_field.lcfield", write_field(&field));
            out.file("doubletwist_jumps.lcjumps", write_jumps(&jumps));
        }
        Ok(out)
    }
}
