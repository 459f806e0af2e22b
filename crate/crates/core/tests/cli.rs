use std::process::{Command, Output};

use entire::flux;
use entire::solution::construct;
use serde_json::Value;

fn entire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entire")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn parse_csv(text: &str) -> Vec<[f64; 8]> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,u,ux,uy,uxx,uxy,uyy"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            v.try_into().unwrap()
        })
        .collect()
}

#[test]
fn list_names_pairs_and_equations() {
    let out = entire(&["list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["identity", "cubic", "arsinh", "arctan", "power", "wrong_msa", "minimal_surface", "aronsson"] {
        assert!(text.contains(name), "{name} missing from list");
    }
    let arctan = text.lines().find(|l| l.trim_start().starts_with("arctan")).unwrap();
    assert!(arctan.contains("range-restricted"));
    let power = text.lines().find(|l| l.trim_start().starts_with("power")).unwrap();
    assert!(power.contains("f-vanishing"));
}

#[test]
fn sample_csv_round_trips_through_the_library() {
    let out = entire(&["sample", "--flux", "arsinh", "--c", "-0.5", "--grid=-3,2,-1,4,6,5"]);
    assert_eq!(code(&out), 0);
    let rows = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 30);
    let sol = construct(flux::arsinh(), flux::arsinh(), -0.5);
    for row in rows {
        let b = sol.eval(row[0], row[1]).unwrap();
        assert_eq!(row[2..].to_vec(), vec![b.u, b.ux, b.uy, b.uxx, b.uxy, b.uyy]);
    }
}

#[test]
fn sample_small_cubic_grid() {
    let rows = parse_csv(&stdout(&entire(&["sample", "--grid=-1,1,-1,1,3,3"])));
    assert_eq!(rows.len(), 9);
    // row-major, x fastest: index 4 is the centre
    assert_eq!(&rows[4][..3], &[0.0, 0.0, 0.0]);
    for r in &rows {
        assert_eq!(r[6], 0.0, "uxy");
    }
}

#[test]
fn sample_quadratic_values() {
    let rows = parse_csv(&stdout(&entire(&["sample", "--flux", "identity", "--c", "2", "--grid=-1,1,-1,1,3,3"])));
    let at = |x: f64, y: f64| rows.iter().find(|r| r[0] == x && r[1] == y).unwrap();
    assert!((at(1.0, 0.0)[2] - 1.0).abs() < 1e-14);
    assert!((at(0.0, 1.0)[2] + 1.0).abs() < 1e-14);
    assert_eq!(at(1.0, 1.0)[2], 0.0);
    assert_eq!((at(1.0, 1.0)[5], at(1.0, 1.0)[7]), (2.0, -2.0));
}

#[test]
fn sample_is_byte_identical_across_runs() {
    let args = ["sample", "--flux1", "cubic", "--flux2", "arsinh", "--grid=-2,2,-2,2,9,7"];
    assert_eq!(entire(&args).stdout, entire(&args).stdout);
}

#[test]
fn sample_outside_arctan_domain_is_a_domain_error() {
    let out = entire(&["sample", "--flux", "arctan", "--grid=-1,2,-1,1,4,3"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is json");
    assert_eq!(err["exit_code"], 3);
}

#[test]
fn verify_passes_and_reports() {
    let out = entire(&["verify", "--grid=-10,10,-10,10,41,41"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["affine"], false);
    assert!(report["max_abs_residual"].as_f64().unwrap() < 1e-10);
    assert!(report["min_ellipticity_margin"].as_f64().unwrap() >= 1.0);
}

#[test]
fn verify_with_finite_differences_and_theorem_form() {
    let out = entire(&["verify", "--fd", "--equation", "theorem_form", "--seed", "5", "--grid=-4,4,-4,4,17,17"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(json(&out)["source"], "finite_difference");
}

#[test]
fn verify_failures_exit_with_tolerance_code() {
    let fd = entire(&["verify", "--fd", "--tol", "1e-12", "--grid=-5,5,-5,5,11,11"]);
    assert_eq!(code(&fd), 4);
    assert_eq!(json(&fd)["passed"], false);
    // the power pair does not solve the wrong equation
    let power = entire(&["verify", "--flux", "power", "--grid=-1,1,-1,1,5,5"]);
    assert_eq!(code(&power), 4);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["sample", "--flux", "nope"],
        vec!["verify", "--equation", "nope"],
        vec!["sample", "--grid", "1,2,3"],
        vec!["verify", "--tol", "-1"],
        vec!["frobnicate"],
        vec!["counterexample", "nope"],
    ] {
        assert_eq!(code(&entire(&args)), 2, "{args:?}");
    }
}

#[test]
fn arctan_counterexample_json() {
    let out = entire(&["counterexample", "arctan"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["bijective"], false);
    assert!(v["interior_max_residual"].as_f64().unwrap() < 1e-8);
    let blowup = v["blowup"].as_array().unwrap();
    let last = blowup.last().unwrap().as_array().unwrap();
    assert_eq!(last[0].as_f64().unwrap(), entire::cli::ARCTAN_PROBES[5]);
    assert!(last[1].as_f64().unwrap() > 8.0);
    let values: Vec<f64> = blowup.iter().map(|p| p[1].as_f64().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn aronsson_counterexample_json() {
    let v = json(&entire(&["counterexample", "aronsson"]));
    assert!((v["holder_exponent"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-3);
    assert!(v["min_ellipticity_margin"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["degenerate_ellipticity"], true);
    assert!(v["off_axis_max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("entire-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let out = entire(&["sample", "--grid=-1,1,-1,1,3,3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&entire(&["sample", "--grid=-1,1,-1,1,3,3"])));
    std::fs::remove_dir_all(&dir).unwrap();
}
