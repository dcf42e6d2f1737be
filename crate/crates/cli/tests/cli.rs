use std::path::PathBuf;
use std::process::Command;

use ginlab::{PrimeField, TermOrder};
use ginlab_cli::*;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ginlab"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ginlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn reports_are_byte_identical() {
    let a = bin().args(["curve", "--a", "2", "--b", "3", "--seed", "5"]).output().unwrap();
    let b = bin().args(["curve", "--a", "2", "--b", "3", "--seed", "5"]).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(!text.contains("timing"));
    let c = bin().args(["curve", "--a", "2", "--b", "3", "--seed", "5", "--timing"]).output().unwrap();
    assert!(String::from_utf8(c.stdout).unwrap().contains("timing_ms"));
}

#[test]
fn exit_codes() {
    let (code, _) = run(&["curve", "--a", "3", "--b", "3", "--degree-cap", "6"]);
    assert_eq!(code, 3);
    // a degenerate pair: the minors have codimension one
    let (code, v) = run(&["sylvester", "--a", "2", "--b", "2", "--f", "x0^2", "--g", "x0^2 + x1*x2"]);
    assert_eq!(code, 2);
    assert_eq!(v["checks"]["codimension"]["actual"], json!(1));
    let (code, _) = run(&["curve", "--a", "3", "--b", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("census.json", "");
    let out = bin().args(["borel-census", "--out", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checks"]["census_size"]["actual"], json!(8));
}

#[test]
fn gin_and_pei_from_files() {
    let ideal = scratch("twisted.txt", "# twisted cubic\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n");
    let (code, v) = run(&["gin", ideal.to_str().unwrap(), "--order", "revlex"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["gin"], json!(["x0^2", "x0*x1", "x1^2"]));
    assert_eq!(v["outputs"]["degree"], json!(3));
    let (code, v) = run(&["gin", ideal.to_str().unwrap(), "--order", "lex"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["borel"], json!(true));

    let (code, v) = run(&["pei", ideal.to_str().unwrap(), "--p-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"]["decomposition"]["passed"], json!(true));
    let mono = scratch("mono.txt", "x0^2, x0*x1");
    let (_, v) = run(&["pei", mono.to_str().unwrap(), "--p-max", "2", "--vars", "x0,x1,x2"]);
    let levels = v["outputs"]["levels"].as_array().unwrap();
    assert_eq!(levels[0]["initial_ideal"], json!([]));
    assert_eq!(levels[1]["initial_ideal"], json!(["x1"]));
    assert_eq!(levels[2]["initial_ideal"], json!(["1"]));
}

#[test]
fn segment_subcommand() {
    let (code, v) = run(&["segment", "--hf", "1,3,3", "--vars", "3", "--bound", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["ideal"], json!(["x0^2", "x0*x1", "x0*x2", "x1^3"]));
    assert_eq!(v["outputs"]["is_ideal"], json!(true));
    let four = scratch("four.txt", "x^3, x^2*y, x^2*z, x*y^3, y^4");
    let (_, v) = run(&["segment", "--witness", four.to_str().unwrap()]);
    assert_eq!(v["outputs"]["feasible"], json!(false));
    let two = scratch("two.txt", "x^3, x^2*y, x^2*z, x*y^3, x*y^2*z, x*y*z^3, y^6");
    let (_, v) = run(&["segment", "--witness", two.to_str().unwrap()]);
    assert_eq!(v["outputs"]["feasible"], json!(true));
}

#[test]
fn points_subcommand() {
    let (code, v) = run(&["points", "--s", "3", "--r", "2", "--order", "lex"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["lex.gin"]["generators"], json!(["x0^2", "x0*x1", "x0*x2", "x1^3"]));
    assert_eq!(v["outputs"]["lex.gin"]["regularity"], json!(3));
    let file = scratch("pts.txt", "1,0,0\n0,1,0\n0,0,1\n1,1,1\n");
    let (code, v) = run(&["points", "--file", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["hilbert_function"][2], json!(4));
    let (code, _) = run(&["points", "--fixture", "seven", "--jobs", "2"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["points", "--s", "3", "--field", "qq"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["points", "--field", "fp:12"]);
    assert_eq!(code, 2, "clap rejects a composite modulus");
}

fn census_in_x(k: usize) -> Value {
    let names = ["x0", "x1", "x2"];
    let j = &census_ideals()[k];
    let renamed: Vec<String> = j.generators().iter().map(|m| m.fmt_with(&names.map(String::from))).collect();
    json!(renamed)
}

#[test]
fn seven_general_points() {
    let orders = [TermOrder::Lex, TermOrder::RevLex];
    let r = experiment_points(PrimeField::default(), 7, 2, &orders, 3, 2, 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.outputs["lex.gin"]["generators"], census_in_x(0));
    assert_eq!(r.outputs["revlex.gin"]["generators"], census_in_x(7));
    assert_eq!(r.outputs["lex.gin"]["regularity"], json!(7));
}

#[test]
fn sylvester_reports() {
    let r = experiment_sylvester(PrimeField::default(), 3, 3, 1, 4, 25, 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.outputs["reduced_shape"], json!([2, 3]));
    assert_eq!(r.outputs["zero_minors"], json!(0));
    let r = experiment_sylvester(PrimeField::default(), 3, 3, 2, 4, 25, 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.outputs["codimension"], json!(3));
}

#[test]
fn curve_reports_embed_invariants() {
    let r = experiment_curve(PrimeField::default(), 2, 2, 9, 25, 2).unwrap();
    for key in ["decomposition", "ascending_chain", "commutes_with_initial_ideal", "gin_borel_fixed", "trials_agree"] {
        assert!(r.checks[key].passed(), "{key}");
    }
    assert_eq!(r.outputs["gin_lex"], json!(["x0^2", "x0*x1", "x0*x2^2", "x1^4"]));
    assert_eq!(r.outputs["k0_generator_degrees"], json!([4]));
}
