//! End-to-end runs of the `fracinv` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fracinv::field::PolyField2D;
use fracinv::fractional::ml_matrix;
use nalgebra::{Matrix2, Vector2};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_three_lines() {
    let s = ok(&["analyze", "--system", "lines_three_concurrent"]);
    for l in ["y = 0", "y = x", "y = -4*x"] {
        assert!(s.lines().any(|x| x.trim() == l), "{l} missing from\n{s}");
    }
}

#[test]
fn analyze_zero_field() {
    let s = ok(&["analyze", "--system", "zero_field"]);
    assert!(s.contains("infinite family: all lines y = m*x"));
    assert!(s.contains("trivial flow"));
}

#[test]
fn analyze_x_parabola() {
    let s = ok(&["analyze", "--system", "parabola_x_compatible"]);
    assert!(s.contains("x = 1/2*y^2"), "{s}");
}

#[test]
fn analyze_files_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in fracinv::corpus::names() {
        let out = dir.path().join(name);
        ok(&["analyze", "--system", name, "--out", out.to_str().unwrap()]);
        let report: Value = serde_json::from_slice(&fs::read(out.join("analysis.json")).unwrap()).unwrap();
        let back = PolyField2D::from_json(&report["field"]).unwrap();
        assert_eq!(back, fracinv::corpus::load(name).unwrap(), "{name}");
        // the serialized field as a system file analyzes to the same report
        let path = write(dir.path(), &format!("{name}.json"), &report["field"].to_string());
        let again = dir.path().join(format!("{name}-again"));
        ok(&["analyze", "--system", &path, "--out", again.to_str().unwrap()]);
        assert_eq!(fs::read(out.join("analysis.json")).unwrap(), fs::read(again.join("analysis.json")).unwrap());
        assert!(out.join("summary.txt").exists() && out.join("analyze.config.json").exists());
    }
}

#[test]
fn schema_errors_carry_pointer_paths() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"degree":2,"a":{"3,0":"1"}}"#, "/a/3,0"),
        (r#"{"degree":2,"a":{"1,0":"abc"}}"#, "/a/1,0"),
        (r#"{"degree":2,"b":{"1,0":{"rat":"1","irr":"1","d":"x"}}}"#, "/b/1,0"),
        (r#"{"degree":2,"c":{}}"#, "/c"),
        (r#"{"a":{}}"#, "/degree"),
        ("not json", "/"),
    ];
    for (body, pointer) in cases {
        let p = write(dir.path(), "bad.json", body);
        let o = run(&["analyze", "--system", &p]);
        assert_eq!(o.status.code(), Some(2), "{body}");
        assert!(stderr(&o).contains(pointer), "{body}: {}", stderr(&o));
    }
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["analyze", "--system", "no_such_system"][..],
        &["analyze", "--system", "zero_field", "--bogus"],
        &["simulate", "--system", "zero_field", "--alpha", "1.2", "--h", "0.1", "--T", "1", "--x0", "0,0"],
        &["simulate", "--system", "zero_field", "--alpha", "0.5", "--h", "-0.1", "--T", "1", "--x0", "0,0"],
        &["simulate", "--system", "zero_field", "--alpha", "0.5", "--h", "0.1", "--T", "0", "--x0", "0,0"],
        &["simulate", "--system", "zero_field", "--alpha", "0.5", "--h", "0.1", "--T", "1", "--x0", "0"],
        &["audit", "--preset", "nonsense"],
        &["field", "--system", "zero_field", "--grid", "1,0,0,1,5"],
        &["ml", "--alpha", "-1", "--z", "1"],
        &["analyze", "--system", "zero_field", "--format", "svg"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn simulate_stays_on_the_line() {
    let s = ok(&["simulate", "--system", "fractional_invariant_lines", "--alpha", "0.75", "--h", "0.00390625", "--T", "1", "--x0", "0.1,0.3"]);
    let r = rows(&s);
    assert_eq!(r.len(), 257);
    assert!(r.iter().all(|v| (v[2] - 3.0 * v[1]).abs() < 1e-6));
    // 17 significant digits
    let first = s.lines().nth(1).unwrap();
    assert_eq!(first.split(',').nth(1).unwrap(), "1.0000000000000001e-1");
}

#[test]
fn simulate_classical_decay() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "decay.json", r#"{"degree":1,"a":{"1,0":"-1"}}"#);
    let s = ok(&["simulate", "--system", &p, "--alpha", "1", "--h", "0.01", "--T", "2", "--x0", "1,0"]);
    for v in rows(&s) {
        assert!((v[1] - (-v[0]).exp()).abs() < 1e-6);
    }
}

#[test]
fn simulate_matches_matrix_closed_form() {
    let s = ok(&["simulate", "--system", "linear_spiral", "--alpha", "0.7", "--h", "0.000244140625", "--T", "1", "--x0", "1,1"]);
    let a = Matrix2::new(1.0, 3.0, -3.0, 1.0);
    for v in rows(&s).iter().step_by(64) {
        let x = ml_matrix(0.7, &a, v[0]).unwrap() * Vector2::new(1.0, 1.0);
        assert!((x - Vector2::new(v[1], v[2])).norm() < 1e-4, "t={}", v[0]);
    }
}

#[test]
fn simulate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run_once = |tag: &str| {
        let out = dir.path().join(tag);
        ok(&[
            "simulate", "--system", "stable_manifold_counterexample", "--alpha", "0.5", "--h", "0.0078125", "--T", "2",
            "--x0", "0.2,0.3", "--format", "csv,json", "--out", out.to_str().unwrap(),
        ]);
        ["trajectory.csv", "trajectory.json", "simulate.config.json"].map(|f| fs::read(out.join(f)).unwrap())
    };
    assert_eq!(run_once("a"), run_once("b"));
    let names: Vec<_> = fs::read_dir(dir.path().join("a")).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 3, "no temporary files left: {names:?}");
}

#[test]
fn sidecar_hash_tracks_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let hash = |tag: &str, alpha: &str| {
        let out = dir.path().join(tag);
        ok(&["simulate", "--system", "zero_field", "--alpha", alpha, "--h", "0.5", "--T", "1", "--x0", "1,1", "--out", out.to_str().unwrap()]);
        let v: Value = serde_json::from_slice(&fs::read(out.join("simulate.config.json")).unwrap()).unwrap();
        v["config_sha256"].as_str().unwrap().to_string()
    };
    assert_eq!(hash("a", "0.5"), hash("b", "0.5"));
    assert_ne!(hash("a", "0.5"), hash("c", "0.6"));
}

#[test]
fn blow_up_exits_3_with_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let o = run(&[
        "simulate", "--system", "fractional_invariant_lines", "--alpha", "0.75", "--h", "0.00390625", "--T", "1",
        "--x0=0.1,-0.3", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let r = rows(&fs::read_to_string(out.join("trajectory.csv")).unwrap());
    assert!(r.len() > 10 && r.len() < 257);
}

fn audit_json(args: &[&str]) -> Value {
    let mut full = vec!["audit"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn audit_semigroup_verdicts() {
    let v = audit_json(&["--preset", "semigroup", "--system", "linear_spiral", "--alpha", "0.7", "--tstar", "0.3"]);
    assert_eq!(v["verdict"], "non-invariant");
    assert!(v["metrics"]["divergence"].as_f64().unwrap() > 1e-2);
    let v = audit_json(&["--preset", "semigroup", "--alpha", "1.0"]);
    assert_eq!(v["verdict"], "invariant-within-tol");
}

#[test]
fn audit_cong_refutes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cong");
    let s = ok(&["audit", "--preset", "cong", "--c2", "1e-10", "--out", out.to_str().unwrap()]);
    assert!(s.contains("published manifold refuted"), "{s}");
    let v: Value = serde_json::from_slice(&fs::read(out.join("audit.json")).unwrap()).unwrap();
    assert_eq!(v["verdict"], "non-invariant");
    assert!(out.join("exact.csv").exists());
}

#[test]
fn audit_subspace_and_curve() {
    let v = audit_json(&["--preset", "subspace"]);
    assert_eq!(v["verdict"], "invariant-within-tol");
    let v = audit_json(&["--preset", "subspace", "--x0", "0.1,0.31", "--line", "3", "--force"]);
    assert_eq!(v["verdict"], "non-invariant");
    let v = audit_json(&["--preset", "curve"]);
    assert_eq!(v["verdict"], "non-invariant");
    // y = x^2 is classically invariant for this system, so the control passes
    let v = audit_json(&[
        "--preset", "curve", "--system", "parabola_y_compatible", "--curve", r#"{"0,1":"1","2,0":"-1"}"#, "--x0", "0.2,0.04",
        "--alpha", "1", "--T", "1",
    ]);
    assert_eq!(v["verdict"], "invariant-within-tol");
}

#[test]
fn ml_command() {
    let v: Value = serde_json::from_str(&ok(&["ml", "--alpha", "0.5", "--z", "-1"])).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() - 0.427_583_576_155_807).abs() < 1e-12);
    let v: Value = serde_json::from_str(&ok(&["ml", "--alpha", "1", "--z", "1"])).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() - std::f64::consts::E).abs() < 1e-14);
}

#[test]
fn field_zero_system_has_zero_arrows() {
    let s = ok(&["field", "--system", "zero_field", "--grid", "-1,1,-1,1,5"]);
    let r = rows(&s);
    assert_eq!(r.len(), 25);
    assert!(r.iter().all(|v| v[2] == 0.0 && v[3] == 0.0));
}

fn polylines(svg: &str, label_contains: &str) -> Vec<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut inside = false;
    for line in svg.lines() {
        if line.starts_with("<g class=\"curve\"") {
            inside = line.contains(label_contains);
        } else if inside && line.starts_with("<polyline") {
            let pts = line.split("points=\"").nth(1).unwrap().trim_end_matches("\"/>");
            out.push(
                pts.split(' ')
                    .map(|p| {
                        let (x, y) = p.split_once(',').unwrap();
                        (x.parse().unwrap(), y.parse().unwrap())
                    })
                    .collect(),
            );
        }
    }
    out
}

#[test]
fn field_overlay_rotated_parabola() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f");
    ok(&["field", "--system", "rotated_parabola", "--overlay", "--format", "csv,svg", "--out", out.to_str().unwrap()]);
    let svg = fs::read_to_string(out.join("field.svg")).unwrap();
    let lines = polylines(&svg, "x*y");
    assert!(!lines.is_empty() && lines.iter().any(|l| l.len() > 50));
    assert_eq!(rows(&fs::read_to_string(out.join("field.csv")).unwrap()).len(), 21 * 21);
}

#[test]
fn field_overlay_separatrix_loop() {
    // grid [-3, 1]², 640px canvas with 20px margins: origin at (470, 320), the
    // loop's far end (-3/sqrt2, 0) at about (151.8, 320)
    let svg = ok(&["field", "--system", "hamiltonian_homoclinic", "--grid=-3,1,-2,2,21", "--overlay", "--format", "svg"]);
    let near = |l: &[(f64, f64)], (x, y): (f64, f64)| l.iter().any(|&(a, b)| (a - x).hypot(b - y) < 4.0);
    let lines = polylines(&svg, "x^3");
    assert!(lines.iter().any(|l| near(l, (470.0, 320.0)) && near(l, (151.8, 320.0))), "{lines:?}");
}
