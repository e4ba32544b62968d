use std::path::PathBuf;
use std::process::{Command, Output};

fn lcbv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcbv")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lcbv-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn report(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(o: &Output, key: &str) -> String {
    report(o)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key},")).map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in {}", report(o)))
}

#[test]
fn verify_default_passes_five_checks() {
    let o = lcbv(&["verify", "--samples", "5000"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(value(&o, "checks"), "5");
    assert_eq!(report(&o).matches("_passed,true").count(), 5);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lcbv(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(lcbv(&["verify", "--nonsense", "1"]).status.code(), Some(2));
    assert_eq!(lcbv(&["mm1d", "--well", "triple"]).status.code(), Some(2));
    assert_eq!(lcbv(&["cuboid", "--K", "abc"]).status.code(), Some(2));
    assert_eq!(lcbv(&["cuboid", "--sweep", "l1", "0", "1", "3"]).status.code(), Some(2));
    assert_eq!(lcbv(&[]).status.code(), Some(2));
    assert_eq!(lcbv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn numeric_errors_exit_3() {
    let o = lcbv(&["hedgehog", "--K", "40", "--cells", "16"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resolution"));
}

#[test]
fn config_file_and_flag_precedence() {
    let d = scratch("config");
    let cfg = d.join("run.cfg");
    std::fs::write(&cfg, "# cuboid run\nK = 4\nheight = 1\ndump = false\n").unwrap();
    let o = lcbv(&["cuboid", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&o, "branch"), "smooth");
    let o = lcbv(&["cuboid", "--config", cfg.to_str().unwrap(), "--K", "1"]);
    assert_eq!(value(&o, "branch"), "jump");
    std::fs::write(&cfg, "K = 4\ncolour = red\n").unwrap();
    assert_eq!(lcbv(&["cuboid", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cuboid_sweep_brackets_threshold() {
    let d = scratch("sweep");
    let o = lcbv(&["cuboid", "--sweep", "K", "0.5", "5", "10", "--height", "1", "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lo: f64 = value(&o, "crossover_lo").parse().unwrap();
    let hi: f64 = value(&o, "crossover_hi").parse().unwrap();
    let kc = std::f64::consts::PI.powi(2) / 4.0;
    assert!(lo < kc && kc < hi);
    let csv = std::fs::read_to_string(d.join("cuboid_sweep.csv")).unwrap();
    assert!(csv.starts_with("K,height,smooth_energy,jump_energy,difference,branch\n"));
    assert_eq!(csv.lines().count(), 11);
    assert!(std::fs::read_to_string(d.join("cuboid_field.lcfield")).unwrap().starts_with("LCFIELD 1\n"));
    assert!(std::fs::read_to_string(d.join("report.csv")).unwrap().starts_with("quantity,value\n"));
}

#[test]
fn hedgehog_and_mm_headlines() {
    let o = lcbv(&["hedgehog", "--K", "2", "--dim", "3", "--cells", "64", "--dump", "false"]);
    let f: f64 = value(&o, "formula").parse().unwrap();
    let q: f64 = value(&o, "quadrature").parse().unwrap();
    assert!((f - 6.0 * std::f64::consts::PI).abs() < 1e-12);
    assert!((q / f - 1.0).abs() < 0.03);
    let o = lcbv(&["mm1d", "--eps", "0.01"]);
    let r: f64 = value(&o, "ratio").parse().unwrap();
    assert!((1.0..=1.05).contains(&r));
}

#[test]
fn lift_outputs_roundtrip() {
    let d = scratch("lift");
    let o = lcbv(&["lift", "--k", "1", "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let field = lcbv_core::fieldcore::io::read_field(&std::fs::read_to_string(d.join("lift_field.lcfield")).unwrap()).unwrap();
    let jumps =
        lcbv_core::fieldcore::io::read_jumps(&std::fs::read_to_string(d.join("lift_jumps.lcjumps")).unwrap(), &field.grid, Some(&field))
            .unwrap();
    assert_eq!(jumps.len().to_string(), value(&o, "jump_facets"));
    assert_eq!(value(&o, "orientable"), "false");
}

#[test]
fn seeds_change_randomized_runs() {
    let a = lcbv(&["verify", "--samples", "2000", "--seed", "1"]);
    let b = lcbv(&["verify", "--samples", "2000", "--seed", "2"]);
    assert_ne!(value(&a, "biaxial_gap_worst"), value(&b, "biaxial_gap_worst"));
    let c = lcbv(&["verify", "--samples", "2000", "--seed", "1"]);
    assert_eq!(a.stdout, c.stdout);
}
