use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_webtrace"))
        .args(args)
        .output()
        .unwrap()
}

fn machine(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap())
}

#[test]
fn verify_four_cycle_identity() {
    let g = data("four_cycle.json");
    let (v, code) = machine(&[
        "verify",
        "--graph",
        &g,
        "--n",
        "3",
        "--connection",
        "identity",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["matches"], true);
    let det = v["outputs"]["det"].as_str().unwrap();
    assert!(det == "8" || det == "-8", "{det}");
}

#[test]
fn verify_random_is_deterministic() {
    let g = data("grid_2x3.json");
    let args = [
        "verify",
        "--graph",
        g.as_str(),
        "--n",
        "2",
        "--connection",
        "random:7",
        "--format",
        "machine",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["matches"], true);
}

#[test]
fn verify_with_connection_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = webtrace_core::graph::grid(2, 3);
    let c = webtrace_core::connection::random_sl(&g, 3, 5);
    let path = dir.path().join("conn.json");
    std::fs::write(&path, webtrace_core::io::write_connection(&c)).unwrap();
    let src = format!("file:{}", path.display());
    let (v, code) = machine(&[
        "verify",
        "--graph",
        &data("grid_2x3.json"),
        "--n",
        "3",
        "--connection",
        &src,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["matches"], true);
}

#[test]
fn malformed_rotation_exits_two_with_line() {
    let text = std::fs::read_to_string(data("four_cycle.json")).unwrap();
    let bad = text.replacen("[1,0]", "[1,9]", 1);
    let line = bad.lines().position(|l| l.contains("[1,9]")).unwrap() + 1;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, bad).unwrap();
    let out = run(&["verify", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(&format!("line {line}:")), "{err}");
}

#[test]
fn unknown_connection_source_exits_two() {
    let out = run(&[
        "verify",
        "--graph",
        &data("four_cycle.json"),
        "--connection",
        "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn annulus_pgf_table() {
    let (v, code) = machine(&["annulus", "--m", "1", "--height", "2", "--what", "pgf"]);
    assert_eq!(code, 0);
    let rows = v["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let probs: Vec<&str> = rows
        .iter()
        .map(|r| r["probability"].as_str().unwrap())
        .collect();
    assert_eq!(probs, ["4/25", "6/25", "6/25", "9/125", "27/125", "9/125"]);
    assert_eq!(v["outputs"]["total"], "1");
}

#[test]
fn annulus_means_and_uv() {
    let (v, _) = machine(&["annulus", "--m", "1", "--height", "2", "--what", "means"]);
    assert_eq!(v["outputs"]["mean"], "3/5");
    assert_eq!(v["outputs"]["finite_sum"], "0.600000000000");
    let (v, _) = machine(&["annulus", "--m", "1", "--height", "2", "--what", "uv"]);
    let terms: Vec<(u64, u64, String)> = v["outputs"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["u"].as_u64().unwrap(),
                t["v"].as_u64().unwrap(),
                t["coefficient"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    for want in [
        (0, 0, "20"),
        (0, 1, "30"),
        (1, 0, "30"),
        (1, 1, "27"),
        (2, 0, "9"),
        (0, 2, "9"),
    ] {
        assert!(
            terms.contains(&(want.0, want.1, want.2.to_string())),
            "{want:?}"
        );
    }
}

#[test]
fn annulus_detz_runs() {
    let (v, code) = machine(&["annulus", "--m", "3", "--height", "3", "--what", "detz"]);
    assert_eq!(code, 0);
    assert!(!v["outputs"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn annulus_even_m_exits_two() {
    let out = run(&["annulus", "--m", "2", "--height", "2", "--what", "pgf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exponent_table_all_ok() {
    let (v, code) = machine(&["annulus", "--what", "exponents", "--max", "6"]);
    assert_eq!(code, 0);
    let rows = v["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 49);
    assert!(rows.iter().all(|r| r["status"] == "ok"));
}

#[test]
fn skein_contractible_chain() {
    let (v, code) = machine(&[
        "skein",
        "--graph",
        &data("four_cycle.json"),
        "--multiweb",
        &data("contractible_chain.json"),
    ]);
    assert_eq!(code, 0);
    let classes = v["outputs"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["j"], 0);
    assert_eq!(classes[0]["k"], 0);
    assert_eq!(classes[0]["coefficient"], "3");
}

#[test]
fn skein_annulus_total_is_matching_cube() {
    let (v, code) = machine(&["skein", "--graph", &data("annulus_3x2.json"), "--jobs", "2"]);
    assert_eq!(code, 0);
    let (w, _) = machine(&["verify", "--graph", &data("annulus_3x2.json"), "--n", "3"]);
    let det = w["outputs"]["det"]
        .as_str()
        .unwrap()
        .trim_start_matches('-')
        .to_string();
    assert_eq!(v["outputs"]["identity_trace_total"].as_str().unwrap(), det);
}

#[test]
fn skein_on_pants_is_unsupported() {
    let out = run(&["skein", "--graph", &data("theta_pants.json")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn pants_reports() {
    let (v, code) = machine(&["pants", "--graph", &data("disk_in_pants.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["Z1"], "0");
    assert_eq!(v["outputs"]["Z0"], "8");
    let (v, _) = machine(&["pants", "--graph", &data("theta_pants.json")]);
    assert_eq!(v["outputs"]["Z1"], "1");
    assert_eq!(v["outputs"]["check"], "27");
    let out = run(&["pants", "--graph", &data("theta.json")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sample_four_cycle() {
    let args = [
        "sample",
        "--graph",
        &data("four_cycle.json"),
        "--n",
        "3",
        "--count",
        "8000",
        "--seed",
        "1",
    ];
    let (v, code) = machine(&args);
    assert_eq!(code, 0);
    let rows = v["outputs"]["rows"].as_array().unwrap();
    let weights: Vec<&str> = rows.iter().map(|r| r["weight"].as_str().unwrap()).collect();
    let mut sorted = weights.clone();
    sorted.sort();
    assert_eq!(sorted, ["1", "1", "3", "3"]);
    let z: f64 = v["outputs"]["max_abs_z"].as_str().unwrap().parse().unwrap();
    assert!(z < 5.0);
    let (again, _) = machine(&args);
    assert_eq!(v, again);
}

#[test]
fn faces_report() {
    let (v, code) = machine(&["faces", "--graph", &data("theta_pants.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["euler_characteristic"], 2);
    assert_eq!(v["outputs"]["faces"].as_array().unwrap().len(), 3);
}

#[test]
fn text_reports_render() {
    let out = run(&["verify", "--graph", &data("theta.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("match: true"), "{text}");
}
