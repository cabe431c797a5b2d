use std::process::{Command, Output};

use serde_json::{json, Value};

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weylkit"));
    cmd.args(args).env_remove("WEYLKIT_KL_CACHE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, .. } = cmd.output().expect("binary runs");
    let text = String::from_utf8(stdout).expect("utf-8 output");
    let value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (status.code().expect("exited normally"), value)
}

fn run(args: &[&str]) -> (i32, Value) {
    run_env(args, &[])
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = run(args);
    assert_eq!(code, 0, "{args:?} -> {v}");
    v
}

#[test]
fn kl_output_is_exact() {
    let (code, v) = run(&["kl", "--n", "4", "--x", "[1,2,3,4]", "--w", "[3,4,1,2]"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"coeffs": [1, 1]}));
    let raw = Command::new(env!("CARGO_BIN_EXE_weylkit"))
        .args(["kl", "--n", "4", "--x", "e", "--w", "s2*s1*s3*s2"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(raw.stdout).unwrap(), "{\"coeffs\":[1,1]}\n");
}

#[test]
fn jh_count() {
    let v = ok(&["jh", "--r", "2", "--k", "4"]);
    assert_eq!(v["count"], 8);
    assert_eq!(v["factors"].as_array().unwrap().len(), 8);
}

#[test]
fn ext_dim_headline() {
    let v = ok(&["ext-dim", "--kind", "analytic", "--degree", "1", "--left", "v:2", "--right", "st-an", "--r", "3", "--k", "3", "--dL", "2"]);
    assert_eq!(v["dim"], 3);
    assert!(v["cite"].as_str().unwrap().starts_with("R7"));
    let v = ok(&["ext-dim", "--kind", "smooth", "--degree", "0", "--left", "i:1", "--right", "i:2", "--r", "1", "--k", "3"]);
    assert_eq!(v["dim"], 0);
    assert_eq!(v["zero_by_rule"], true);
    let v = ok(&["ext-dim", "--kind", "analytic", "--degree", "3", "--left", "v:2", "--right", "st-an", "--r", "1", "--k", "3"]);
    assert_eq!(v, json!({"status": "not-determined"}));
}

#[test]
fn gl4_listing() {
    let v = ok(&["steinberg-mult", "--r", "2", "--k", "2", "--dL", "1", "--S", "-", "--J", "-"]);
    let got: Vec<(String, i64)> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["w"].as_str().unwrap().to_string(), e["m"].as_i64().unwrap()))
        .collect();
    let expect = [
        ("[1,2,3,4]", 1),
        ("[1,3,2,4]", 1),
        ("[1,3,4,2]", 0),
        ("[3,1,2,4]", 0),
        ("[3,1,4,2]", 0),
        ("[3,4,1,2]", 1),
    ];
    assert_eq!(got, expect.map(|(w, m)| (w.to_string(), m)));
    let one = ok(&["steinberg-mult", "--r", "2", "--k", "2", "--w", "s2*s3*s1*s2"]);
    assert_eq!(one["m"], 1);
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["kl", "--bogus"][..],
        &["frobnicate"],
        &["kl", "--n", "4", "--x", "[1,1,3,4]", "--w", "e"],
        &["kl", "--n", "3", "--x", "e", "--w", "[1,2,3,4]"],
        &["steinberg-mult", "--r", "2", "--k", "2", "--w", "[2,1,3,4]"],
        &["cosets", "--n", "4", "--I", "7"],
        &["ext-dim", "--kind", "analytic", "--degree", "1", "--left", "c:2", "--right", "st-an", "--r", "1", "--k", "3"],
        &["--parallel", "0", "jh", "--r", "1", "--k", "3"],
    ] {
        let (code, v) = run(args);
        assert_eq!(code, 2, "{args:?} -> {v}");
        assert!(v["error"].is_string(), "{args:?} -> {v}");
    }
}

#[test]
fn resource_cap_exits_3() {
    let (code, v) = run_env(&["kl", "--n", "6", "--x", "e", "--w", "[4,6,2,5,1,3]"], &[("WEYLKIT_KL_CACHE_CAP", "5")]);
    assert_eq!(code, 3);
    assert!(v["error"].as_str().unwrap().contains("cap"));
    let (code, _) = run(&["steinberg-mult", "--r", "1", "--k", "7"]);
    assert_eq!(code, 2, "n > 6 without --max-len is refused");
}

#[test]
fn help_and_version_exit_0() {
    for flag in ["--help", "--version"] {
        let out = Command::new(env!("CARGO_BIN_EXE_weylkit")).arg(flag).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn deterministic_and_thread_independent() {
    let args = ["steinberg-mult", "--r", "1", "--k", "4", "--dL", "2", "--S", "1"];
    let base = ok(&args);
    assert_eq!(base, ok(&args));
    for threads in ["1", "4"] {
        let mut with = vec!["--parallel", threads];
        with.extend(args);
        assert_eq!(ok(&with), base);
    }
    assert!(!base["constituents"].as_array().unwrap().is_empty());
}

#[test]
fn text_forms_round_trip() {
    let v = ok(&["weyl", "--n", "4", "--w", "s2*s1*s3*s2"]);
    assert_eq!(v["w"], "[3,4,1,2]");
    let word: Vec<String> = v["components"][0]["reduced_word"].as_array().unwrap().iter().map(|i| format!("s{i}")).collect();
    let again = ok(&["weyl", "--n", "4", "--w", &word.join("*")]);
    assert_eq!(again, v);
    let v = ok(&["weyl", "--w", "[3,4,1,2]", "--x", "[1,3,2,4]"]);
    assert_eq!(v["bruhat_leq"], true);
}

#[test]
fn selftest_levels() {
    let (code, v) = run(&["selftest", "--level", "quick"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["pass"], true);
    let (code, v) = run(&["selftest", "--seed-kl-fault", "[1,2,3,4] [3,4,1,2] 1,2"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    let kl = v["suites"].as_array().unwrap().iter().find(|s| s["name"] == "kl").unwrap();
    assert_eq!(kl["pass"], false);
}
