//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p lcbv-cli --test acceptance --release`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcbv_cli::experiments::verify::{check_biaxial_gap, check_bulk, check_density_identity, check_twist_completion, check_uniaxial_gap};
use lcbv_cli::output::Output;
use lcbv_core::analytic::*;
use lcbv_core::energy::ModelParams;
use lcbv_core::fieldcore::{DirectorField, Grid, JumpSet};
use lcbv_core::lifting::{comb, synth_defect, LineField};
use lcbv_core::linalg::{norm, outer, scale};
use lcbv_core::solver::gradient_check;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: String) -> Verdict {
    if ok { Ok(msg) } else { Err(msg) }
}

fn cli(args: &[&str]) -> Result<Output, String> {
    let mut full = vec!["lcbv"];
    full.extend_from_slice(args);
    let (exp, cfg) = lcbv_cli::parse(full).map_err(|e| e.to_string())?;
    lcbv_cli::execute(exp.as_ref(), &cfg).map_err(|e| e.to_string())
}

fn num(out: &Output, key: &str) -> Result<f64, String> {
    out.get_f64(key).ok_or_else(|| format!("report lacks {key}"))
}

fn c1() -> Verdict {
    let c = check_bulk(100_000, 0);
    ensure(c.passed, format!("worst slack {:.3e} over {} samples", c.worst, c.samples))
}

fn c2() -> Verdict {
    let u = check_uniaxial_gap(1_000_000, 0);
    let b = check_biaxial_gap(1_000_000, 0);
    ensure(u.passed && b.passed, format!("min margins uniaxial {:.3e}, biaxial {:.3e}", u.worst, b.worst))
}

fn c3() -> Verdict {
    let c = check_density_identity(8).map_err(|e| e.to_string())?;
    ensure(c.passed, format!("smallest refinement ratio {:.3}", c.worst))
}

fn c4() -> Verdict {
    let c = check_twist_completion(100_000, 0);
    ensure(c.passed, format!("worst slack {:.3e}", c.worst))
}

/// Connected components of the facets, joined when they share a grid vertex.
fn facet_paths(js: &JumpSet) -> usize {
    let g = &js.grid;
    let ends = |cell: usize, axis: usize| {
        let [i, j, _] = g.coords(cell);
        if axis == 0 { [(i + 1, j), (i + 1, j + 1)] } else { [(i, j + 1), (i + 1, j + 1)] }
    };
    let facets: Vec<_> = js.facets().collect();
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (n, f) in facets.iter().enumerate() {
        for v in ends(f.cell, f.axis) {
            if let Some(&m) = owner.get(&v) {
                let (a, b) = (find(&mut parent, n), find(&mut parent, m));
                parent[a] = b;
            } else {
                owner.insert(v, n);
            }
        }
    }
    (0..facets.len()).map(|n| find(&mut parent, n)).collect::<BTreeSet<_>>().len()
}

fn c5() -> Verdict {
    let grid = Grid::boxed([64, 64, 1], [-1.0, -1.0, 0.0], [1.0, 1.0, 1.0]).map_err(|e| e.to_string())?;
    let whole = comb(&synth_defect(&grid, 2, [0.0, 0.0]).map_err(|e| e.to_string())?);
    let half_lf = synth_defect(&grid, 1, [0.0, 0.0]).map_err(|e| e.to_string())?;
    let half = comb(&half_lf);
    let exact = half.field.values.iter().zip(&half_lf.values).all(|(&m, &v)| outer(m, m) == outer(v, v));
    let mut invariant = true;
    for seed in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flipped = half_lf.values.iter().map(|&v| if rng.gen_bool(0.5) { scale(v, -1.0) } else { v }).collect();
        let r = comb(&LineField::new(grid.clone(), flipped).map_err(|e| e.to_string())?);
        invariant &= r.field.values == half.field.values && r.jumps == half.jumps;
    }
    let cli_ok = cli(&["lift", "--seed", "3"])?.get("flip_invariant") == Some("true");
    let paths = facet_paths(&half.jumps);
    let n = half.jumps.len();
    ensure(
        whole.orientable && whole.jumps.is_empty() && !half.orientable && (30..=34).contains(&n) && paths == 1 && exact && invariant && cli_ok,
        format!(
            "charge 1: {} jumps; charge 1/2: {n} facets in {paths} path(s), m⊗m exact {exact}, flip invariant {}",
            whole.jumps.len(),
            invariant && cli_ok
        ),
    )
}

fn c6() -> Verdict {
    let sol = hedgehog(2.0, 3).map_err(|e| e.to_string())?;
    let out = cli(&["hedgehog", "--K", "2", "--dim", "3", "--cells", "96", "--dump", "false"])?;
    let q = num(&out, "quadrature")?;
    let rel = (q / (6.0 * PI) - 1.0).abs();
    let res = curvature_jump_residual(2.0, 3);
    ensure(
        (sol.energy_formula - 6.0 * PI).abs() <= 1e-12 * 6.0 * PI
            && rel <= 0.01
            && sol.energy_formula < sol.sobolev_energy
            && (sol.sobolev_energy - 8.0 * PI).abs() <= 1e-12 * 8.0 * PI
            && res.abs() <= 1e-12,
        format!("formula {:.15}, 96³ quadrature {q:.6} (rel {rel:.2e}), sobolev {:.6}, residual {res:.1e}", sol.energy_formula, sol.sobolev_energy),
    )
}

fn c7() -> Verdict {
    let kc = cuboid_critical_k(1.0);
    let at = cuboid_minimizer(kc, 1.0, 0.5, 0.5).map_err(|e| e.to_string())?;
    let closed = (kc - PI * PI / 4.0).abs() <= 1e-12 && (at.smooth_energy - at.jump_energy).abs() <= 1e-12;
    let k_hi = format!("{}", 2.0 * kc);
    let k_lo = format!("{}", 0.5 * kc);
    let smooth = cli(&["relax", "--K", &k_hi, "--init", "interp", "--dims", "24,24,32", "--dump", "false"])?;
    let jump = cli(&["relax", "--K", &k_lo, "--init", "jump", "--noise", "0.2", "--dims", "24,24,32", "--dump", "false"])?;
    let (es, ej) = (num(&smooth, "relative_error")?, num(&jump, "relative_error")?);
    let branches = smooth.get("expected_branch") == Some("smooth") && jump.get("expected_branch") == Some("jump");
    ensure(
        closed && branches && es <= 0.05 && ej <= 0.05,
        format!("K* = {kc:.15}; relax 24×24×32 smooth rel err {es:.2e}, jump rel err {ej:.2e}"),
    )
}

fn c8() -> Verdict {
    let p = cholesteric_profile(1e-8).map_err(|e| e.to_string())?;
    let dd = (p.d - PI * PI / 4.0).abs();
    let dth = p.z.iter().zip(&p.theta).map(|(z, th)| (th - 0.5 * PI * z).abs()).fold(0.0, f64::max);
    let out = cli(&["cholesteric1d", "--t", "1", "--cells", "64"])?;
    let (e, naive) = (num(&out, "grid_energy")?, num(&out, "naive_energy")?);
    let (r1, r2) = (num(&out, "residual_ratio_1")?, num(&out, "residual_ratio_2")?);
    ensure(
        dd <= 1e-6 && dth <= 1e-6 && e < naive && r1 >= 3.5 && r2 >= 3.5,
        format!("|D - π²/4| {dd:.1e}, max |θ - πz/2| {dth:.1e}; t = 1 energy {e:.6} < naive {naive:.6}; residual ratios {r1:.3}, {r2:.3}"),
    )
}

fn c9() -> Verdict {
    let out = cli(&["doubletwist", "--dump", "false"])?;
    let per = num(&out, "energy_per_length")?;
    let bounds = out.get("bounds_ok") == Some("true");
    let t = out.get_f64("smallest_negative_t");
    let msg = format!(
        "per-length energy {per:.6}, bounds hold {bounds}, smallest t with negative total {}",
        t.map_or("none".to_string(), |t| format!("{t:.2} (total {})", out.get("total").unwrap_or("?")))
    );
    ensure(per < 0.0 && bounds && t.is_some_and(|t| t <= 40.0), msg)
}

fn c10() -> Verdict {
    let well = QuarticWell::default();
    let c = limit_constant(&well).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    let mut ok = true;
    let mut last = 0.0;
    for eps in [0.1, 0.03, 0.01] {
        let out = cli(&["mm1d", "--eps", &eps.to_string()])?;
        let e = num(&out, "energy")?;
        ok &= e >= c - 1e-6;
        last = e;
        lines.push(format!("F({eps}) = {e:.8}"));
    }
    let rel = (last - c).abs() / c;
    ok &= rel <= 0.05;
    ensure(ok, format!("C = {c:.8}; {}; rel gap at 0.01 {rel:.2e}", lines.join(", ")))
}

fn random_smooth(seed: u64) -> Result<(DirectorField, ModelParams), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = Grid::boxed([8, 8, 8], [0.0; 3], [1.0; 3]).map_err(|e| e.to_string())?;
    let base: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    let base = scale(base, 1.0 / norm(base));
    let modes: Vec<([f64; 3], [f64; 3], f64)> = (0..3)
        .map(|_| {
            let a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-0.3..0.3));
            let k: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
            (a, k, rng.gen_range(0.0..2.0 * PI))
        })
        .collect();
    let f = DirectorField::from_fn(grid, |x| {
        let mut v = base;
        for (a, k, ph) in &modes {
            let s = (k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + ph).sin();
            for i in 0..3 {
                v[i] += a[i] * s;
            }
        }
        scale(v, 1.0 / norm(v))
    })
    .map_err(|e| e.to_string())?;
    let m = ModelParams::new(rng.gen_range(-2.0..2.0), 1.0).map_err(|e| e.to_string())?;
    Ok((f, m))
}

fn c11() -> Verdict {
    let mut worst = 0.0f64;
    for seed in 0..6 {
        let (f, m) = random_smooth(seed)?;
        worst = worst.max(gradient_check(&f, &m, 1e-4, seed).map_err(|e| e.to_string())?);
    }
    ensure(worst < 1e-5, format!("max relative error {worst:.2e} over 6 seeded fields"))
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .map(|rd| {
            rd.filter_map(|e| e.ok())
                .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap_or_default()))
                .collect()
        })
        .unwrap_or_default()
}

fn c12() -> Verdict {
    let runs: &[&[&str]] = &[
        &["verify", "--samples", "20000", "--seed", "7"],
        &["lift", "--seed", "5"],
        &["hedgehog", "--cells", "32"],
        &["cuboid", "--sweep", "K", "0.5", "5", "10"],
        &["cholesteric1d", "--t", "1"],
        &["doubletwist", "--cells", "64"],
        &["mm1d", "--eps", "0.03"],
        &["relax", "--dims", "6,6,12", "--noise", "0.1", "--seed", "3", "--K", "1"],
    ];
    let bin = env!("CARGO_BIN_EXE_lcbv");
    let root = std::env::temp_dir().join(format!("lcbv-acceptance-{}", std::process::id()));
    let mut files = 0;
    for (n, args) in runs.iter().enumerate() {
        let mut outs = Vec::new();
        for rep in 0..2 {
            let dir = root.join(format!("{n}-{rep}"));
            let o = Command::new(bin).args(*args).arg("--out").arg(&dir).output().map_err(|e| e.to_string())?;
            if !o.status.success() {
                return Err(format!("`{}` exited with {:?}", args.join(" "), o.status.code()));
            }
            let snap = snapshot(&dir);
            for (name, bytes) in &snap {
                let head = bytes.split(|&b| b == b'\n').next().unwrap_or_default();
                let head = String::from_utf8_lossy(head);
                let ok = head == "LCFIELD 1" || head == "LCJUMPS 1" || (name.ends_with(".csv") && head.contains(','));
                if !ok {
                    return Err(format!("{name} starts with `{head}`"));
                }
            }
            outs.push((o.stdout, snap));
        }
        if outs[0] != outs[1] {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
        files += outs[0].1.len();
    }
    let _ = std::fs::remove_dir_all(&root);
    Ok(format!("{} subcommands run twice, {files} files and stdout byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("bulk potential consistency", c1),
        ("gap inequalities", c2),
        ("density identity O(h²)", c3),
        ("twist completion identity", c4),
        ("combing and orientability", c5),
        ("hedgehog Lavrentiev gap", c6),
        ("cuboid crossover", c7),
        ("cholesteric 1D profile", c8),
        ("double-twist lattice", c9),
        ("Modica–Mortola limit", c10),
        ("gradient check", c11),
        ("determinism", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let v = f();
        let secs = t0.elapsed().as_secs_f64();
        match v {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
