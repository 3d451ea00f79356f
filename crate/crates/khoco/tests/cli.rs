use std::process::{Command, Output};

use khoco::fixtures::fixture_path;
use serde_json::Value;

fn khoco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khoco")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = khoco(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

#[test]
fn params_hopf_reduced() {
    let v = json(&["params", &fx("hopf.json"), "--reduced", "--degree", "0"]);
    assert_eq!((v["d_hat"].as_u64(), v["d_hat_dual"].as_u64(), v["d"].as_u64()), (Some(2), Some(1), Some(1)));
    assert_eq!(v["exact"], true);
}

#[test]
fn params_unknot() {
    let v = json(&["params", &fx("unknot0.json"), "--degree", "0"]);
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(2), Some(2), Some(1)));
}

#[test]
fn params_braid_shifted() {
    let v = json(&["params", &fx("braid_s1s2m1s1m1s2.json"), "--degree", "2", "--convention", "shifted"]);
    assert_eq!(v["d"], 4);
}

#[test]
fn params_all_degrees_csv() {
    let o = khoco(&["params", &fx("hopf.json"), "--reduced", "--csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree,n,k,d_hat,d_hat_dual,d,exact");
    assert_eq!(lines.len(), 3);
}

#[test]
fn family_iterated_hopf() {
    let v = json(&["family", "iterated-hopf", "--l", "2"]);
    assert_eq!((v["n"].as_str(), v["k"].as_str(), v["d"].as_str()), (Some("304"), Some("6"), Some("4")));
    let m = json(&["family", "iterated-hopf", "--l", "2", "--measure"]);
    assert_eq!(m["ok"], true);
    assert_eq!(m["measured_d"], 4);
}

#[test]
fn sl3_tier_two() {
    let v = json(&["sl3", "unknot", "--l", "1", "--tier", "2"]);
    assert_eq!(v["d_hat"], serde_json::json!([3, 3]));
    let w = &v["witness"];
    assert!(w.is_object(), "witness missing");
}

#[test]
fn annular_d3() {
    let v = json(&["annular", &fx("annular_D3.json"), "--adeg", "1"]);
    assert_eq!(v["d"], 3);
}

#[test]
fn asymptotics_csv() {
    let o = khoco(&["asymptotics", "hopf-c", "--terms", "4", "--csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let exact: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    assert_eq!(exact, ["2", "12", "56", "304"]);
}

#[test]
fn input_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("khoco-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"crossings": [{"under_in": 7, "over_in": 7, "under_out": 7, "over_out": 1, "sign": 1}]}"#).unwrap();
    assert_eq!(khoco(&["params", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(khoco(&["params", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(khoco(&["verify-paper", "--id", "no-such-check"]).status.code(), Some(2));
    assert_eq!(khoco(&["family", "nope", "--l", "1"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_khoco"))
        .args(["family", "iterated-hopf", "--l", "3", "--measure"])
        .env("KHOCO_BUDGET_MS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exact"], false);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["params", &fx("trefoil.json")];
    assert_eq!(khoco(&args).stdout, khoco(&args).stdout);
    let v = ["verify-paper", "--section", "2"];
    let a = khoco(&v);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let strip = |o: &Output| -> Vec<Value> {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("runtime_ms");
                v
            })
            .collect()
    };
    let b = khoco(&v);
    assert_eq!(strip(&a), strip(&b));
    let ids: Vec<String> = strip(&a).iter().map(|v| v["check_id"].as_str().unwrap().to_string()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn check_ids_documented() {
    let readme = include_str!("../../../README.md");
    for c in khoco::verify::CHECKS {
        assert!(readme.contains(&format!("`{}`", c.id)), "{} missing from the README index", c.id);
    }
}
