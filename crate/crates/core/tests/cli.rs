use std::process::{Command, Output};

fn prohecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prohecke")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_braid_passes() {
    let out = prohecke(&["verify", "braid", "--preset", "gln:3:a1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    let ids: Vec<&str> = v["reports"][0]["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn jm_is_inverse_of_negative_translation() {
    let out = prohecke(&["jm", "--preset", "gln:2:laurent", "--i", "1"]);
    assert!(out.status.success());
    let j = serde_json::to_string(&json(&out)["result"]).unwrap();
    let prod = prohecke(&["mul", "--preset", "gln:2:laurent", &j, r#"{"x":[-1,0],"sigma":[1,2]}"#]);
    let terms = json(&prod)["result"]["terms"].clone();
    assert_eq!(terms.as_array().unwrap().len(), 1);
    assert_eq!(terms[0]["coeff"], "1");
    assert_eq!(terms[0]["elem"]["x"], serde_json::json!([0, 0]));
}

#[test]
fn center_example() {
    let out = prohecke(&[
        "center",
        "--preset",
        "yokonuma:2:2",
        "--orbit-of",
        r#"{"t":[0,0],"x":[1,0],"sigma":[1,2]}"#,
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["certificate"]["pass"], true);
    assert_eq!(v["orbit"].as_array().unwrap().len(), 2);
}

#[test]
fn seeds_give_identical_reports() {
    let a = prohecke(&["verify", "assoc", "--preset", "gln:2:a1", "--seed", "11"]);
    let b = prohecke(&["verify", "assoc", "--preset", "gln:2:a1", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_and_config_files() {
    let dir = std::env::temp_dir().join(format!("prohecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    let report = dir.join("report.json");
    std::fs::write(&cfg, r#"{"preset":"gln:2:a1","seed":3,"suite":{"assoc_samples":5}}"#).unwrap();
    let out = prohecke(&["verify", "assoc", "--config", cfg.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["reports"][0]["seed"], 3);
    assert_eq!(v["reports"][0]["checks"][0]["cases"], 5);
    std::fs::write(&cfg, r#"{"preset":"gln:2:a1","colour":1}"#).unwrap();
    assert_eq!(prohecke(&["verify", "assoc", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_exit_nonzero_with_location() {
    let out = prohecke(&["mul", "--preset", "gln:2:a1", r#"{"x":[0,0],"sigma":[2,1"#, "{}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at 23"));
    assert_eq!(prohecke(&["verify", "nope", "--preset", "gln:2:a1"]).status.code(), Some(2));
    assert_eq!(prohecke(&["theta", "--preset", "gln:2:universal", r#"{"x":[1,0],"sigma":[1,2]}"#]).status.code(), Some(2));
    assert_eq!(prohecke(&["verify", "braid"]).status.code(), Some(2));
    let o = prohecke(&["theta-hat", "--preset", "gln:2:a1", "--orient", "spherical:[2,1].bad", r#"{"x":[1,0],"sigma":[1,2]}"#]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at 15"));
}

#[test]
fn bernstein_and_xi_commands() {
    let out = prohecke(&[
        "verify-bernstein",
        "--preset",
        "gln:2:a1",
        "--orient",
        "spherical:[1,2]",
        "--orient2",
        "spherical:[2,1]",
        "--g",
        r#"{"x":[2,-1],"sigma":[1,2]}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["pass"], true);
    let xi = prohecke(&["xi", "--preset", "gln:2:a1", "--wall", r#"{"root":[1,-1],"k":0}"#]);
    assert!(xi.status.success());
    let bad = prohecke(&["xi", "--preset", "gln:2:a1", "--wall", r#"{"root":[1,1],"k":0}"#]);
    assert_eq!(bad.status.code(), Some(2));
}
