use std::f64::consts::PI;

use lcbv_core::analytic::*;
use lcbv_core::energy::{total_energy, ModelParams};
use lcbv_core::fieldcore::{detect_jumps, Facet, Grid, DEFAULT_ANGLE_THRESHOLD};
use lcbv_core::solver::*;

fn column(n: usize) -> Grid {
    Grid::boxed([1, 1, n], [0.0; 3], [1.0; 3]).unwrap()
}

#[test]
fn cholesteric_residual_second_order() {
    let p = cholesteric_profile(0.5).unwrap();
    let r: Vec<f64> = [32, 64, 128]
        .iter()
        .map(|&n| {
            let f = profile_to_field(&p, &column(n)).unwrap();
            let js = detect_jumps(&f, DEFAULT_ANGLE_THRESHOLD).unwrap();
            assert!(js.is_empty());
            el_residual(&f, &js, 0.5).unwrap().max
        })
        .collect();
    assert!(r[0] / r[1] >= 3.5 && r[1] / r[2] >= 3.5, "{r:?}");
}

#[test]
fn wrong_chirality_is_not_stationary() {
    let p = cholesteric_profile(0.5).unwrap();
    let f = profile_to_field(&p, &column(64)).unwrap();
    let js = detect_jumps(&f, DEFAULT_ANGLE_THRESHOLD).unwrap();
    assert!(el_residual(&f, &js, -0.5).unwrap().max > 0.1);
}

fn facet_point(g: &Grid, f: &Facet) -> [f64; 3] {
    let mut x = g.center(f.cell);
    x[f.axis] += 0.5 * g.spacing[f.axis];
    x
}

#[test]
fn hedgehog_natural_bc_first_order() {
    // Exact radial normals isolate the one-sided derivative error.
    let mut exact = Vec::new();
    let mut pca = Vec::new();
    for n in [24, 48, 96] {
        let g = Grid::boxed([n; 3], [-1.1; 3], [1.1; 3]).unwrap();
        let f = hedgehog_field(2.0, 3, &g).unwrap();
        let js = detect_jumps(&f, DEFAULT_ANGLE_THRESHOLD).unwrap();
        let normals: Vec<[f64; 3]> = js
            .facets()
            .map(|fa| {
                let x = facet_point(&g, &fa);
                let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
                [x[0] / r, x[1] / r, x[2] / r]
            })
            .collect();
        exact.push(natural_bc_residual_with(&f, &js, 0.0, &normals).unwrap().max);
        pca.push(natural_bc_residual(&f, &js, 0.0).unwrap().mean);
    }
    assert!(exact[0] / exact[1] > 1.7 && exact[1] / exact[2] > 1.7, "{exact:?}");
    assert!(pca[2] < 0.5 * pca[0], "pca {pca:?} exact {exact:?}");
}

#[test]
fn hedgehog_grid_energy_near_formula() {
    let g = Grid::boxed([64; 3], [-1.0; 3], [1.0; 3]).unwrap();
    let f = hedgehog_field(2.0, 3, &g).unwrap();
    let e = total_energy(&f, &ModelParams::new(0.0, 2.0).unwrap(), None).unwrap();
    assert!((e.total / (6.0 * PI) - 1.0).abs() < 0.03, "{e}");
}

#[test]
fn analytic_fields_pass_gradient_check() {
    let g = cuboid_grid([6, 6, 20], 1.0, 0.5, 0.5).unwrap();
    let f = smooth_field(&g, 1.0).unwrap();
    let m = ModelParams::new(0.7, 1.0).unwrap();
    assert!(gradient_check(&f, &m, 1e-4, 0).unwrap() < 1e-5);
    let p = cholesteric_profile(1.0).unwrap();
    let f = profile_to_field(&p, &Grid::boxed([4, 4, 32], [0.0; 3], [1.0; 3]).unwrap()).unwrap();
    assert!(gradient_check(&f, &ModelParams::new(1.0, 1.0).unwrap(), 1e-4, 5).unwrap() < 1e-5);
}

#[test]
fn relax_keeps_exact_jump_minimizer() {
    let g = cuboid_grid([4, 4, 16], 1.0, 0.5, 0.5).unwrap();
    let sol = cuboid_minimizer(1.0, 1.0, 0.5, 0.5).unwrap();
    let seed = sol.field(&g).unwrap();
    let mut p = RelaxParams::new(seed.clone());
    p.max_iters = 1;
    let out = relax(&p, &ModelParams::new(0.0, 1.0).unwrap()).unwrap();
    assert_eq!(out.field.values, seed.values);
    assert!((out.breakdown.total - sol.energy).abs() < 1e-12);
}
