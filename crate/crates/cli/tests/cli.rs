use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isopoint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn invariants() {
    assert_eq!(stdout(&["invariants", "--level", "17"]).trim(), "X_1(17): index 144, cusps 16, genus 5");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["invariants", "--level", "37", "--json"])).unwrap();
    assert_eq!(v["genus"], 40);
    assert_eq!(run(&["invariants", "--level", "4"]).status.code(), Some(1));
}

#[test]
fn degrees_formats() {
    assert_eq!(
        stdout(&["degrees", "--group", "gl2@5", "--level", "5", "--csv"]),
        "degree,orbit_field_degree,cx,count\n12,24,1/2,1\n"
    );
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["degrees", "--group", "borel@37", "--level", "37", "--json"])).unwrap();
    assert_eq!(v["min_degree"], 18);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["degrees", "--group", "cns+@5", "--level", "25", "--json"])).unwrap();
    assert_eq!(v["min_degree"], 300);
}

#[test]
fn degrees_from_file() {
    let path = std::env::temp_dir().join(format!("isopoint-group-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"modulus": 7, "generators": [[3, 0, 0, 1]], "label": "semi"}"#).unwrap();
    let csv = stdout(&["degrees", "--group", path.to_str().unwrap(), "--level", "7", "--csv"]);
    assert!(csv.starts_with("degree,orbit_field_degree,cx,count\n"));
    assert!(csv.contains("1,1,1,3\n"));
    std::fs::write(&path, r#"{"modulus": 7, "generators": [[1, 1, 1, 1]]}"#).unwrap();
    let out = run(&["degrees", "--group", path.to_str().unwrap(), "--level", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular element"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_semicartan() {
    let text = stdout(&["verify", "semicartan", "--ell-range", "11..47", "--epsilon-alt"]);
    let embeds: Vec<&str> = text.lines().filter(|l| l.contains("embeds true")).collect();
    assert_eq!(embeds.len(), 1);
    assert!(embeds[0].starts_with("ell  13  f 6"));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["verify", "semicartan", "--ell-range", "13..13", "--json"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn scan_cns() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["scan", "cns", "--ell", "17", "--json"])).unwrap();
    assert_eq!(v["bound"], 24);
    assert_eq!(v["admissible_violators"], serde_json::json!([]));
    assert!(!v["filtered_out_below_bound"].as_array().unwrap().is_empty());
    assert_eq!(run(&["scan", "cns", "--ell", "43"]).status.code(), Some(3));
}

#[test]
fn classify_text_and_json() {
    let text = stdout(&["classify", "--ell", "37", "--n", "2"]);
    assert!(text.contains("9317") && text.contains("-162677523113838677"));
    assert!(text.contains("candidate: isolation known"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["classify", "--ell", "17", "--json"])).unwrap();
    assert_eq!(v["schema"], "isopoint.report/1");
    assert_eq!(v["surviving_j_invariants"], serde_json::json!([]));
}

#[test]
fn classify_data_errors_exit_2() {
    let path = std::env::temp_dir().join(format!("isopoint-images-{}.json", std::process::id()));
    std::fs::write(&path, "[{\"label\": 1}]").unwrap();
    let out = run(&["classify", "--ell", "17", "--table", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    std::fs::write(&path, "[]").unwrap();
    let text = stdout(&["classify", "--ell", "17", "--table", path.to_str().unwrap()]);
    assert!(text.contains("insufficient external data"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn classify_range_summary() {
    let text = stdout(&["classify-range", "--ells", "11..37", "--n", "1"]);
    assert!(text.trim_end().ends_with("primes with survivors: [37]"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn facts_list() {
    let text = stdout(&["facts", "list"]);
    assert!(text.contains("mazur-borel-primes"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["facts", "list", "--json"])).unwrap();
    assert!(v["facts"].as_array().unwrap().iter().all(|f| !f["citation"].as_str().unwrap().is_empty()));
}
