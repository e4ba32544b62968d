use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcbv_core::fieldcore::io::{write_field, write_jumps};
use lcbv_core::fieldcore::Grid;
use lcbv_core::lifting::{comb, improve_jumps, synth_defect, LineField};
use lcbv_core::linalg::{outer, scale};

use super::Experiment;
use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::Output;

pub struct Lift;

const KEYS: &[Key] = &[
    Key::new("cells", Some("64"), "cells per side of the square [-1, 1]²"),
    Key::new("k", Some("1"), "twice the defect charge"),
    Key::new("center", Some("0,0"), "defect center x,y"),
    Key::new("improve", Some("0"), "jump-shortening passes after combing"),
];

impl Experiment for Lift {
    fn name(&self) -> &'static str {
        "lift"
    }

    fn about(&self) -> &'static str {
        "comb a planar line-field defect into a director with jumps"
    }

    fn keys(&self) -> &'static [Key] {
        KEYS
    }

    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError> {
        let n = cfg.usize("cells")?;
        let center = cfg.f64_list("center")?;
        if center.len() != 2 {
            return Err(CliError::Usage("center must be x,y".into()));
        }
        if n < 2 {
            return Err(CliError::Usage("cells must be >= 2".into()));
        }
        let grid = Grid::boxed([n, n, 1], [-1.0, -1.0, 0.0], [1.0, 1.0, 1.0])?;
        let lf = synth_defect(&grid, cfg.i32("k")?, [center[0], center[1]])?;
        let mut r = comb(&lf);
        let passes = cfg.usize("improve")?;
        if passes > 0 {
            r = improve_jumps(&r, passes);
        }

        // Same line field with random per-cell signs.
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let flipped: Vec<_> = lf.values.iter().map(|&v| if rng.gen_bool(0.5) { scale(v, -1.0) } else { v }).collect();
        let mut r2 = comb(&LineField::new(grid.clone(), flipped)?);
        if passes > 0 {
            r2 = improve_jumps(&r2, passes);
        }
        let invariant = r2.field.values == r.field.values && r2.jumps == r.jumps;
        let reproduces = r.field.values.iter().zip(&lf.values).all(|(&m, &v)| outer(m, m) == outer(v, v));

        let zeros = (0..grid.len()).filter(|&p| lf.is_zero(p)).count();
        let mut out = Output::default();
        out.text("cells", n);
        out.text("zero_cells", zeros);
        out.text("orientable", r.orientable);
        out.text("jump_facets", r.jumps.len());
        out.num("jump_length", r.jumps.raw_area());
        out.text("components", r.visited_components);
        out.text("reproduces_line_field", reproduces);
        out.text("flip_invariant", invariant);
        out.file("lift_field.lcfield", write_field(&r.field));
        out.file("lift_jumps.lcjumps", write_jumps(&r.jumps));
        Ok(out)
    }

    fn failure(&self, out: &Output) -> Option<String> {
        ["reproduces_line_field", "flip_invariant"]
            .into_iter()
            .find(|k| out.get(k) != Some("true"))
            .map(|k| k.to_string())
    }
}
