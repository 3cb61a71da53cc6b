use capmono::config::RunConfig;
use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn capmono(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capmono"))
        .arg("--out")
        .arg(out)
        .args(args)
        .env("CAPMONO_THREADS", "2")
        .output()
        .unwrap()
}

#[test]
fn canonical_form_is_a_fixed_point() {
    let text = r#"
[run]
theta = 1.0471975511965976

[generator]
name = "flat-disk-ball"

[probes]
points = [[0.0, 0.0, 0.0]]
random = 3
"#;
    let c = RunConfig::parse(text).unwrap();
    assert_eq!(c.generator.name, "flat-disk-ball");
    assert_eq!(c.quadrature.nu, 128);
    let canon = c.to_canonical();
    let again = RunConfig::parse(&canon).unwrap();
    assert_eq!(again, c);
    assert_eq!(again.to_canonical(), canon);
}

#[test]
fn bad_configs_are_rejected() {
    assert!(matches!(RunConfig::parse("[run]\nthetta = 1.0\n"), Err(capmono::Error::Config(_))));
    assert!(RunConfig::parse("[generator]\nname = \"torus\"\n").and_then(|c| c.validate()).is_err());
    let mut c = RunConfig::default();
    c.run.theta = PI;
    assert!(c.validate().is_err());
    let mut c = RunConfig::default();
    c.generator.name = "hemisphere".into();
    assert_eq!(c.theta(), PI / 2.0);
}

#[test]
fn probes_are_seeded() {
    let mut c = RunConfig::default();
    c.probes.random = 5;
    c.run.seed = 11;
    let s = c.sample().unwrap();
    let a = c.probe_points(&s);
    assert_eq!(a.len(), 6);
    assert_eq!(a, c.probe_points(&s));
    assert_eq!(a[0], s.boundary[0].point);
    c.run.seed = 12;
    assert_ne!(a, c.probe_points(&s));
    let g = c.r_grid();
    assert_eq!(g.len(), c.radii.count);
    assert!((g[0] - c.radii.r_min).abs() < 1e-15 && (g.last().unwrap() - c.radii.r_max).abs() < 1e-12);
}

#[test]
fn cli_generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let o = capmono(d, &["generate", "flat-disk-ball", "--theta", "1.0471975511965976", "--nu", "32", "--nv", "32"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["surface.csv", "boundary.csv", "curves.csv"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let without_dir = |p: &Path| {
        let mut c = RunConfig::load(&p.join("config.toml")).unwrap();
        c.output.dir.clear();
        c
    };
    assert_eq!(without_dir(&a), without_dir(&b));
    // regenerating from the written config reproduces the surface
    let c = dir.path().join("c");
    let cfg = a.join("config.toml");
    let o = capmono(&c, &["--config", cfg.to_str().unwrap(), "generate"]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(a.join("surface.csv")).unwrap(), std::fs::read(c.join("surface.csv")).unwrap());
}

#[test]
fn cli_energy_and_suite() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = capmono(d, &["energy", "--theta", "2.0943951023931953", "--nu", "64", "--nv", "64"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(d.join("energy.json")).unwrap()).unwrap();
    assert!((v["willmore"].as_f64().unwrap() - 3.0 * PI).abs() < 1e-2);
    let o = capmono(d, &["identity-suite", "--nu", "128", "--nv", "128"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let csv = std::fs::read_to_string(d.join("identity_suite.csv")).unwrap();
    assert!(csv.starts_with("check,value,tolerance,pass"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    let o = capmono(d, &["report", "--nu", "64", "--nv", "64"]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(d.join("report.txt")).unwrap().contains('π'));
}

#[test]
fn cli_monotonicity_writes_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = capmono(d, &["monotonicity", "--nu", "96", "--nv", "96"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let p = std::fs::read_to_string(d.join("profile_000.csv")).unwrap();
    assert!(p.starts_with("r,g,gHat,G,R,deficit,residual"));
    assert_eq!(p.lines().count(), 41);
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(capmono(d, &["generate", "torus"]).status.code(), Some(2));
    let bad = d.join("bad.toml");
    std::fs::write(&bad, "[run]\nnope = 1\n").unwrap();
    assert_eq!(capmono(d, &["--config", bad.to_str().unwrap(), "energy"]).status.code(), Some(2));
    assert_eq!(capmono(d, &["frobnicate"]).status.code(), Some(2));
    // too coarse for the residual tolerance
    assert_eq!(capmono(d, &["identity-suite", "--nu", "8", "--nv", "8"]).status.code(), Some(1));
}
