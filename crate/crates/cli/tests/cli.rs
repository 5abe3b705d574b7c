use std::path::PathBuf;
use std::process::{Command, Output};

use grushin_cli::report::validate_report;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_grushin-lab");

fn lab(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("GRUSHIN_LAB_JOBS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grushin-lab-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const SMALL_SCAN: [&str; 4] = ["--n-u", "81", "--n-v", "41"];

#[test]
fn every_json_command_follows_the_schema() {
    let mut cases: Vec<Vec<&str>> = vec![
        vec!["exp", "--q", "0,0", "--lam", "1,1", "--t", "1"],
        vec!["geodesic", "--q", "1,0", "--lam", "0,1", "--samples", "5"],
        vec!["distance", "--q", "0,0", "--p", "1,0.5"],
        vec![
            "distance", "--q", "1,0", "--p", "1,0", "--space", "double", "--p-copy", "b",
        ],
        vec![
            "contract",
            "--q",
            "1,0",
            "--disk",
            "3,0,0.5",
            "--t",
            "0.5",
            "--N",
            "4",
            "--samples",
            "2000",
            "--seed",
            "3",
        ],
        vec!["double-check", "--p", "2,1", "--q", "0.5,-1"],
        vec!["double-check", "--pairs", "5", "--seed", "1"],
        vec!["curvature", "--p", "1,0", "--N", "3"],
        vec!["cutlocus", "--q", "1,0", "--u", "1", "--v", "1", "--t", "2"],
    ];
    let mut scan = vec!["mcp-scan", "--space", "plane"];
    scan.extend(SMALL_SCAN);
    cases.push(scan);
    let mut verify = vec!["mcp-verify", "--space", "halfplane+", "--N", "4"];
    verify.extend(SMALL_SCAN);
    cases.push(verify);
    for args in cases {
        let out = lab(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = json(&out);
        validate_report(&v).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(v["command"], args[0]);
        let text = String::from_utf8(out.stdout).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v, "{text}");
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "contract",
        "--q",
        "0.5,0",
        "--disk",
        "1,1,0.3",
        "--t",
        "0.25,0.75",
        "--N",
        "5",
        "--space",
        "plane",
        "--samples",
        "5000",
        "--seed",
        "42",
    ];
    let a = lab(&args);
    let b = lab(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(BIN)
        .args(args)
        .env("GRUSHIN_LAB_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    let mut other = args.to_vec();
    *other.last_mut().unwrap() = "43";
    assert_ne!(a.stdout, lab(&other).stdout);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| lab(args).status.code().unwrap();
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["exp", "--q", "1"]), 64);
    assert_eq!(code(&["exp", "--lam", "1,1"]), 64);
    // a point outside the half-plane is a domain error
    assert_eq!(
        code(&[
            "distance",
            "--q",
            "-1,0",
            "--p",
            "1,0",
            "--space",
            "halfplane+"
        ]),
        1
    );
    assert_eq!(code(&["curvature", "--p", "0,0", "--N", "3"]), 1);
    assert_eq!(code(&["curvature", "--p", "1,0", "--N", "2"]), 1);
    let mut fail = vec!["mcp-verify", "--space", "double", "--N", "4"];
    fail.extend(SMALL_SCAN);
    assert_eq!(code(&fail), 2);
    assert_eq!(
        code(&[
            "contract",
            "--q",
            "1,0",
            "--disk",
            "3,0,0.5",
            "--t",
            "0.5",
            "--N",
            "1",
            "--samples",
            "2000"
        ]),
        2
    );
    let bad_jobs = Command::new(BIN)
        .args(["exp", "--q", "0,0", "--lam", "1,0"])
        .env("GRUSHIN_LAB_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_jobs.status.code(), Some(64));
    assert_eq!(
        code(&["--jobs", "0", "exp", "--q", "0,0", "--lam", "1,0"]),
        64
    );
}

#[test]
fn failing_verification_reports_a_witness() {
    let mut args = vec!["mcp-verify", "--space", "plane", "--N", "4"];
    args.extend(SMALL_SCAN);
    let v = json(&lab(&args));
    assert_eq!(v["result"]["holds"], false);
    let w = &v["witness"];
    let u = w["u"].as_f64().unwrap();
    assert!((u + 3.0).abs() < 1e-3, "{w}");
    assert!(w["ratio"].as_f64().unwrap() < w["bound"].as_f64().unwrap());
}

#[test]
fn geodesic_csv_header() {
    let out = lab(&[
        "geodesic",
        "--q",
        "0,0",
        "--lam",
        "1,1",
        "--samples",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y,u,v"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn figure_files() {
    let dir = scratch_dir("figure");
    let out = lab(&[
        "figure",
        "--out-dir",
        dir.to_str().unwrap(),
        "--rays",
        "3",
        "--samples",
        "20",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for (file, header) in [
        ("fan_origin.csv", "ray_id,t,x,y,u,v"),
        ("fan_q1.csv", "ray_id,t,x,y,u,v"),
        ("cut_origin.csv", "polyline_id,x,y"),
        ("cut_q1.csv", "polyline_id,x,y"),
    ] {
        let text = std::fs::read_to_string(dir.join(file)).unwrap();
        assert_eq!(text.lines().next(), Some(header), "{file}");
        assert!(text.lines().count() > 2, "{file}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn config_file_precedence() {
    let dir = scratch_dir("config");
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"q": [1.0, 0.0], "lam": [0.0, 1.0], "t": 0.5}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = json(&lab(&["--config", c, "exp"]));
    assert_eq!(from_file["config"]["t"], 0.5);
    let flag_wins = json(&lab(&["--config", c, "exp", "--t", "1"]));
    assert_eq!(flag_wins["config"]["t"], 1.0);
    assert_eq!(flag_wins["config"]["q"], serde_json::json!([1.0, 0.0]));
    let x = flag_wins["result"]["x"].as_f64().unwrap();
    assert!((x - 1f64.cos()).abs() < 1e-11);

    let out = dir.join("report.json");
    let written = lab(&["--config", c, "-o", out.to_str().unwrap(), "exp"]);
    assert!(written.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v, from_file);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn product_spaces_shift_the_dimension() {
    let mut args = vec!["mcp-scan", "--space", "product:3:plane"];
    args.extend(SMALL_SCAN);
    let v = json(&lab(&args));
    assert_eq!(v["result"]["k"], 3);
    let n = v["result"]["n_min"].as_f64().unwrap();
    let base = v["result"]["base_n_min"].as_f64().unwrap();
    assert!((n - (base + 3.0)).abs() < 1e-9);
    assert!((n - 8.0).abs() < 1e-3);
}
