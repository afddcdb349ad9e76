use std::collections::BTreeMap;
use std::process::Command;

use soliton_forge::cli::{run_with, Outcome};
use soliton_forge::resolve::MODELS_ENV;

fn run(args: &[&str]) -> Outcome {
    run_with(std::iter::once("soliton-forge").chain(args.iter().copied()), None)
}

fn keys(o: &Outcome) -> BTreeMap<String, String> {
    o.stdout.lines().filter_map(|l| l.split_once('=')).map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

#[test]
fn curvature_report_for_gs3d() {
    let o = run(&["--machine", "curvature", "gs3d"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let k = keys(&o);
    assert_eq!(k["det"], "mu");
    assert_eq!(k["christoffel[1][1][3]"], "1");
    assert_eq!(k["christoffel[2][2][3]"], "-1");
    assert_eq!(k["christoffel[3][1][1]"], "-eps/mu*exp(2*t)");
    assert_eq!(k["christoffel[3][2][2]"], "eps/mu*exp(-2*t)");
    assert_eq!(k.keys().filter(|k| k.starts_with("christoffel")).count(), 4);
    assert_eq!(k["ricci[3][3]"], "-2");
    assert_eq!(k["scalar"], "-2/mu");
}

#[test]
fn solve_gs3d_reports_forced_lambda_and_three_constants() {
    let o = run(&["--machine", "soliton", "solve", "gs3d"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let k = keys(&o);
    assert_eq!(k["status"], "solved");
    assert_eq!(k["lambda"], "-2/mu");
    assert_eq!(k["lambda.forced"], "true");
    assert_eq!(k["free_constants"], "3");
    assert_eq!(k["field.X3D.equal"], "true");
    assert_eq!(k["particular.X[1]"], "-1/mu*x");
}

#[test]
fn pinned_type_b_is_infeasible_with_certificate() {
    let o = run(&["--machine", "soliton", "solve", "typeB", "--pin", "mu=0"]);
    assert_eq!(o.code, 1);
    let k = keys(&o);
    assert_eq!(k["status"], "infeasible");
    assert_eq!(k["certificate.slot"], "[1][2]");
    assert_eq!(k["certificate.key"], "x^2");
    assert_eq!(k["certificate.row"], "0 = -4/9");
}

#[test]
fn verify_and_classify() {
    let o = run(&["--machine", "soliton", "verify", "gs3d", "--field", "X3D", "--lambda", "-2/mu", "--set", "mu=2"]);
    assert_eq!(o.code, 0);
    assert_eq!(keys(&o)["kind"], "expanding");
    let o = run(&["--machine", "soliton", "verify", "gs3d", "--field", "X3D", "--lambda", "-2/mu"]);
    assert_eq!(keys(&o)["kind"], "depends-on-parameters");
    let o = run(&["--machine", "soliton", "verify", "gs3d", "--field", "X3D", "--lambda", "0"]);
    assert_eq!(o.code, 1);
    let k = keys(&o);
    assert_eq!(k["holds"], "false");
    assert_eq!(k["residual[3][3]"], "-2");
}

#[test]
fn gradient_verdicts() {
    for (model, field) in [("gs3d", "X3D"), ("typeB", "X4D")] {
        let o = run(&["--machine", "gradient-check", model, "--field", field]);
        assert_eq!(o.code, 0);
        let k = keys(&o);
        assert_eq!(k["verdict"], "not-gradient");
        assert_ne!(k["witness.value"], "0");
    }
    let o = run(&["--machine", "gradient-check", "flat3", "--field", "zero"]);
    assert_eq!(keys(&o)["verdict"], "gradient");
}

#[test]
fn oracle_passes_with_parameters() {
    let o = run(&["--machine", "oracle", "gs3d", "--set", "eps=-1", "--set", "mu=2", "--points", "20"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let k = keys(&o);
    assert_eq!(k["status"], "pass");
    assert_eq!(k["params"], "eps:-1,mu:2,A1:1,A2:1,A3:1");
}

#[test]
fn catalog_commands() {
    let o = run(&["--machine", "catalog", "list"]);
    assert_eq!(o.code, 0);
    assert_eq!(keys(&o)["entry[4].id"], "flat4");
    let o = run(&["catalog", "show", "flat3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("metric[3][3] = 1"));
    assert!(o.stdout.contains("vectorfield zero {"));
    let shown = keys(&run(&["--machine", "catalog", "show", "gs3d"]));
    let solved = keys(&run(&["--machine", "curvature", "gs3d"]));
    assert_eq!(shown["model_hash"], solved["model_hash"]);
    assert_eq!(shown["solution.X3D.lambda"], "-2/mu");
}

#[test]
fn input_errors_exit_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.model");
    std::fs::write(&bad, "dim 2\ncoords x y\nmetric {\n  g[1][1] = exp(x*y);\n}\n").unwrap();
    let o = run(&["curvature", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("bad.model:4:18:"), "{}", o.stderr);
    assert_eq!(run(&["curvature", "nosuchmodel"]).code, 2);
    assert_eq!(run(&["catalog", "show", "nosuch"]).code, 2);
    assert_eq!(run(&["soliton", "solve", "typeB", "--pin", "nu=1"]).code, 2);
    assert_eq!(run(&["soliton", "verify", "gs3d", "--field", "Y", "--lambda", "1"]).code, 2);
    let o = run(&["soliton", "verify", "gs3d", "--field", "X3D", "--lambda", "x"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--lambda:1:1:"), "{}", o.stderr);
    assert_eq!(run(&["oracle", "gs3d", "--set", "eps=0.5"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn degenerate_metric_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("deg.model");
    std::fs::write(&p, "dim 2\ncoords x y\nmetric {\n  g[1][1] = x;\n  g[2][2] = 1;\n}\n").unwrap();
    let o = run(&["curvature", p.to_str().unwrap()]);
    assert_eq!(o.code, 2, "{}", o.stderr);
}

#[test]
fn models_directory_overrides_embedded_copy() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("gs3d.model"), "dim 2\ncoords x y\nmetric {\n  g[1][1] = 1;\n  g[2][2] = 1;\n}\n")
        .unwrap();
    let o = run_with(["soliton-forge", "--machine", "curvature", "gs3d"], Some(dir.path().to_path_buf()));
    assert_eq!(keys(&o)["dim"], "2");
    let o = run_with(["soliton-forge", "--machine", "curvature", "typeB"], Some(dir.path().to_path_buf()));
    assert_eq!(keys(&o)["dim"], "4");
}

#[test]
fn machine_output_is_deterministic() {
    for args in [
        vec!["--machine", "soliton", "solve", "gs3d"],
        vec!["--machine", "oracle", "typeB", "--set", "mu=2", "--seed", "3", "--points", "10"],
        vec!["--machine", "curvature", "typeB"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout.as_bytes(), b.stdout.as_bytes());
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn binary_exit_codes_and_environment() {
    let bin = env!("CARGO_BIN_EXE_soliton-forge");
    let st = Command::new(bin).args(["soliton", "solve", "typeB", "--pin", "mu=0"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&st.stdout).contains("certificate.row = 0 = -4/9"));
    let st = Command::new(bin).args(["curvature", "nosuch"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("plane.model"), "dim 2\ncoords x y\nline_element { dx^2 + exp(2*x)*dy^2 }\n")
        .unwrap();
    let st = Command::new(bin).args(["--machine", "curvature", "plane"]).env(MODELS_ENV, dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let out = String::from_utf8_lossy(&st.stdout);
    // The hyperbolic plane dx² + e^{2x}dy² has τ = −2.
    assert!(out.lines().any(|l| l == "scalar=-2"), "{out}");
}
