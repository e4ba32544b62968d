use super::discrete::{facets_of, is_zero, touched, Discrete, Terms};
use super::project_s2_or_zero;
use crate::energy::{total_energy, EnergyBreakdown, ModelParams};
use crate::error::{LcError, Result};
use crate::fieldcore::io::fmt17;
use crate::fieldcore::{detect_jumps, DirectorField, JumpSet, DEFAULT_ANGLE_THRESHOLD};
use crate::linalg::Vec3;

#[derive(Clone, Debug)]
pub struct RelaxParams {
    pub step: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub jump_update_period: usize,
    pub seed_field: DirectorField,
}

impl RelaxParams {
    /// Defaults scaled to the grid: step 0.5/Σ h⁻² over active axes.
    pub fn new(seed_field: DirectorField) -> Self {
        let g = &seed_field.grid;
        let inv: f64 = g.active_axes().iter().map(|&a| g.spacing[a].powi(-2)).sum();
        let step = if inv > 0.0 { 0.5 / inv } else { 0.1 };
        RelaxParams { step, max_iters: 20_000, tol: 1e-10, jump_update_period: 10, seed_field }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !(self.tol > 0.0) || self.jump_update_period == 0 {
            return Err(LcError::Domain("need step > 0, tol > 0, jump_update_period >= 1".into()));
        }
        self.seed_field.validate()
    }
}

/// One row of the iteration log; `jump_area` is the plain facet count area.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelaxLogEntry {
    pub iter: usize,
    pub gradient: f64,
    pub twist: f64,
    pub norm: f64,
    pub jump: f64,
    pub total: f64,
    pub jump_area: f64,
}

#[derive(Clone, Debug)]
pub struct RelaxOutcome {
    pub field: DirectorField,
    pub jumps: JumpSet,
    /// The minimized energy: facet-difference gradient term, plain facet area.
    pub breakdown: EnergyBreakdown,
    /// [`total_energy`] of the result with the final jump set.
    pub reference: EnergyBreakdown,
    pub log: Vec<RelaxLogEntry>,
    pub iterations: usize,
    pub converged: bool,
}

pub fn log_csv(log: &[RelaxLogEntry]) -> String {
    let mut s = String::from("iter,gradient_term,twist_term,norm_term,jump_term,total,jump_area\n");
    for e in log {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            e.iter,
            fmt17(e.gradient),
            fmt17(e.twist),
            fmt17(e.norm),
            fmt17(e.jump),
            fmt17(e.total),
            fmt17(e.jump_area)
        ));
    }
    s
}

fn entry(iter: usize, s: &Terms, k: f64) -> RelaxLogEntry {
    RelaxLogEntry {
        iter,
        gradient: s.gradient,
        twist: s.twist,
        norm: s.norm,
        jump: k * s.area,
        total: s.total(k),
        jump_area: s.area,
    }
}

fn check_finite(e: f64, iter: usize) -> Result<f64> {
    if e.is_finite() {
        Ok(e)
    } else {
        Err(LcError::Numeric(format!("non-finite energy at iteration {iter}")))
    }
}

fn assert_descent(before: f64, after: f64, what: &str, iter: usize) {
    assert!(
        after <= before + 1e-12 * before.abs().max(1.0),
        "{what} raised the energy at iteration {iter}: {before} -> {after}"
    );
}

/// Projected gradient step with backtracking. Returns whether a step was taken.
fn continuous_step(d: &mut Discrete, values: &mut Vec<Vec3>, tau: &mut f64, max_step: f64, e: f64) -> Result<Option<f64>> {
    let grad = d.gradient(values);
    let free: Vec<usize> = (0..values.len()).filter(|&p| !d.fixed[p] && !is_zero(values[p])).collect();
    if free.iter().all(|&p| grad[p] == [0.0; 3]) {
        return Ok(None);
    }
    while *tau >= max_step * 1e-12 {
        let mut trial = values.clone();
        let mut died = Vec::new();
        for &p in &free {
            let v = values[p];
            let g = grad[p];
            trial[p] = project_s2_or_zero([v[0] - *tau * g[0], v[1] - *tau * g[1], v[2] - *tau * g[2]]);
            if is_zero(trial[p]) {
                died.push(p);
            }
        }
        let saved = d.map.mask.clone();
        d.enforce_forced(&trial, died.iter().copied());
        let et = d.terms(&trial).total(d.k);
        if et.is_finite() && et <= e {
            *values = trial;
            *tau = (*tau * 1.5).min(max_step);
            return Ok(Some(et));
        }
        d.map.mask = saved;
        *tau *= 0.5;
    }
    Ok(None)
}

/// Greedy per-facet jump classification. Returns the number of changes.
fn jump_sweep(d: &mut Discrete, values: &[Vec3]) -> usize {
    let grid = d.grid().clone();
    let mut changes = 0;
    for p in 0..grid.len() {
        for a in 0..3 {
            let Some(q) = grid.plus(p, a) else { continue };
            if !d.counts(p, a) || is_zero(values[p]) || is_zero(values[q]) {
                continue;
            }
            let was = d.map.mask.has(p, a);
            // Cut iff the volume saving exceeds K times the facet area.
            d.map.mask.set(p, a, false);
            let open = d.local(values, &[p, q], &[(p, a)]);
            d.map.mask.set(p, a, true);
            let cut = d.local(values, &[p, q], &[(p, a)]);
            let jump = cut < open;
            d.map.mask.set(p, a, jump);
            changes += usize::from(jump != was);
        }
    }
    changes
}

/// Greedy zeroing of cells. Returns the number of cells zeroed.
fn zero_sweep(d: &mut Discrete, values: &mut [Vec3]) -> usize {
    let grid = d.grid().clone();
    let mut changes = 0;
    for p in 0..grid.len() {
        if d.fixed[p] || is_zero(values[p]) {
            continue;
        }
        let near = touched(&grid, p);
        let facets = facets_of(&grid, p);
        let before = d.local(values, &near, &facets);
        let old = values[p];
        let bits: Vec<bool> = facets.iter().map(|&(c, a)| d.map.mask.has(c, a)).collect();
        values[p] = [0.0; 3];
        d.enforce_forced(values, [p]);
        let after = d.local(values, &near, &facets);
        if after < before {
            changes += 1;
        } else {
            values[p] = old;
            for (&(c, a), &b) in facets.iter().zip(&bits) {
                d.map.mask.set(c, a, b);
            }
        }
    }
    changes
}

/// Alternating minimization of the discrete SBV energy: projected gradient
/// steps on free cells, then every `jump_update_period` iterations a greedy
/// jump sweep and a greedy zero sweep. Stops once an iteration lowers the
/// energy by less than `tol` and the sweeps change nothing.
pub fn relax(params: &RelaxParams, model: &ModelParams) -> Result<RelaxOutcome> {
    params.validate()?;
    let seed = &params.seed_field;
    let grid = seed.grid.clone();
    let init = detect_jumps(seed, DEFAULT_ANGLE_THRESHOLD)?;
    let mut values = seed.values.clone();
    let mut d = Discrete::new(&grid, &seed.fixed, init.mask(), model);
    d.enforce_forced(&values, 0..grid.len());

    let mut s = d.terms(&values);
    let mut e = check_finite(s.total(model.k), 0)?;
    let mut log = vec![entry(0, &s, model.k)];
    let mut tau = params.step;
    let mut converged = false;
    let mut iterations = 0;

    for it in 1..=params.max_iters {
        iterations = it;
        let start = e;
        let stepped = continuous_step(&mut d, &mut values, &mut tau, params.step, e)?;
        if let Some(et) = stepped {
            assert_descent(e, et, "gradient step", it);
            e = check_finite(et, it)?;
        }
        let small = start - e < params.tol;
        if it % params.jump_update_period == 0 || small {
            let changed = jump_sweep(&mut d, &values) + zero_sweep(&mut d, &mut values);
            let en = check_finite(d.terms(&values).total(model.k), it)?;
            assert_descent(e, en, "jump/zero sweep", it);
            e = en;
            if small && changed == 0 {
                converged = true;
            }
        }
        s = d.terms(&values);
        log.push(entry(it, &s, model.k));
        if converged {
            break;
        }
    }

    let mut field = seed.clone();
    field.values = values;
    let mut jumps = JumpSet::new(grid.clone());
    for p in 0..grid.len() {
        for a in 0..3 {
            if d.map.mask.has(p, a) {
                jumps.insert_from(&field, p, a)?;
            }
        }
    }
    let breakdown = EnergyBreakdown::from_terms(s.gradient, s.twist, s.norm, s.bulk, s.k_area(model.k));
    let reference = total_energy(&field, model, Some(&jumps))?;
    Ok(RelaxOutcome { field, jumps, breakdown, reference, log, iterations, converged })
}
