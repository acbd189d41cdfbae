use std::fs;
use std::process::{Command, Output};

fn loglap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loglap")).args(args).output().expect("spawn loglap")
}

fn loglap_workers(workers: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loglap"))
        .env("LOGLAP_WORKERS", workers)
        .args(args)
        .output()
        .expect("spawn loglap")
}

fn rows(path: &std::path::Path) -> Vec<(f64, f64)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',').map(|v| v.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

#[test]
fn kernel_table_is_decreasing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k2.csv");
    let o = loglap(&[
        "kernel", "--space", "hyperbolic", "--kind", "log2", "--n", "3", "--r-min", "0.1", "--r-max", "8", "--points", "64",
        "-o", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&out);
    assert_eq!(r.len(), 64);
    assert!(r.windows(2).all(|w| w[1].1 < w[0].1 && w[1].1 > 0.0));
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("k2.json")).unwrap()).unwrap();
    assert_eq!(meta["n"], 3);
    assert_eq!(meta["route"], "time_quadrature");
}

#[test]
fn kernel_argument_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = loglap(&["kernel", "--space", "hyperbolic", "--kind", "frac", "--n", "3", "--s", "1.5", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = loglap(&["kernel", "--space", "hyperbolic", "--kind", "frac", "--n", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = loglap(&["kernel", "--space", "mars", "--kind", "heat", "--n", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = loglap(&[
        "kernel", "--space", "hyperbolic", "--kind", "frac", "--n", "4", "--s", "0.5", "--route", "bessel-closed-form", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn euclidean_heat_table_has_requested_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.csv");
    let o = loglap(&["kernel", "--space", "euclid", "--kind", "heat", "--n", "1", "--t", "0.5", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&out);
    assert_eq!(r.len(), 64);
    // (4 pi t)^(-1/2) exp(-r^2 / 4t) at t = 1/2
    for (x, v) in r {
        let want = (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        assert!((v - want).abs() < 1e-14);
    }
}

fn stdout_value(o: &Output) -> f64 {
    let s = String::from_utf8_lossy(&o.stdout);
    s.lines().next().unwrap().split_whitespace().nth(1).unwrap().parse().unwrap()
}

#[test]
fn apply_routes_agree() {
    let p = loglap(&["apply", "--op", "log", "--route", "pointwise", "--fn", "bump", "--n", "1", "--at", "0"]);
    let m = loglap(&["apply", "--op", "log", "--route", "multiplier", "--fn", "bump", "--n", "1", "--at", "0"]);
    assert_eq!(p.status.code(), Some(0));
    assert_eq!(m.status.code(), Some(0));
    let (p, m) = (stdout_value(&p), stdout_value(&m));
    assert!((p - m).abs() <= 2e-3 * m.abs(), "{p} {m}");
}

#[test]
fn apply_frac_gaussian() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.csv");
    let o = loglap(&[
        "apply", "--op", "frac", "--s", "0.5", "--route", "bochner", "--fn", "gaussian", "--n", "1", "--at", "0", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    // E|Z| for a standard normal
    let want = (2.0 / std::f64::consts::PI).sqrt();
    assert!((stdout_value(&o) - want).abs() < 1e-6);
    assert_eq!(rows(&out).len(), 1);
    assert!(dir.path().join("a.json").exists());
}

#[test]
fn apply_errors() {
    let o = loglap(&["apply", "--op", "log", "--fn", "unknown", "--n", "1", "--at", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = loglap(&["apply", "--op", "frac", "--fn", "bump", "--n", "1", "--at", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = loglap(&["apply", "--op", "log", "--fn", "bump", "--n", "2", "--at", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = loglap(&["apply", "--op", "frac", "--s", "0.75", "--fn", "tent", "--n", "1", "--at", "0"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn apply_hyperbolic() {
    let p = loglap(&["apply", "--space", "hyperbolic", "--op", "log", "--fn", "bump", "--n", "3", "--at", "0"]);
    let b = loglap(&[
        "apply", "--space", "hyperbolic", "--op", "log", "--route", "bochner", "--fn", "bump", "--n", "3", "--at", "0",
    ]);
    assert_eq!(p.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let (p, b) = (stdout_value(&p), stdout_value(&b));
    assert!((p - b).abs() < 1e-9 * b.abs(), "{p} {b}");
    let o = loglap(&["apply", "--space", "hyperbolic", "--op", "frac", "--s", "0.5", "--fn", "bump", "--n", "3", "--at", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_identities_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let o = loglap(&["verify", "--suite", "identities", "--json-out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"euler") && ids.contains(&"double_integral"));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let o = loglap(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_hyperbolic_includes_mass_and_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let o = loglap(&["verify", "--suite", "hyperbolic", "--json-out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"heat_mass_n3") && ids.contains(&"heat_envelope_n2"));
}

#[test]
fn single_worker_output_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &std::path::Path| {
        vec![
            "kernel".to_string(),
            "--space".into(),
            "hyperbolic".into(),
            "--kind".into(),
            "frac".into(),
            "--n".into(),
            "2".into(),
            "--s".into(),
            "0.5".into(),
            "--points".into(),
            "24".into(),
            "-o".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let aa = args(&a);
    let bb = args(&b);
    let o1 = loglap_workers("1", &aa.iter().map(String::as_str).collect::<Vec<_>>());
    let o2 = loglap(&bb.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o2.status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read(a.with_extension("json")).unwrap(), fs::read(b.with_extension("json")).unwrap());
    let bad = loglap_workers("zero", &["verify", "--suite", "specfun"]);
    assert_eq!(bad.status.code(), Some(2));
}
