use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtstirling"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn table_s_qt_csv() {
    let s = stdout(&["table", "S_qt", "--n-max", "3"]);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "n\\k,0,1,2,3");
    assert_eq!(lines[4], "3,0,1,1 + t,1");
}

#[test]
fn table_a_row_sums() {
    let s = stdout(&["table", "a", "--n-max", "5"]);
    assert!(s.lines().next().unwrap().starts_with("n\\k,"));
    assert_eq!(s.lines().count(), 7);
}

#[test]
fn table_json_parses() {
    let s = stdout(&["table", "c_q", "--n-max", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 15);
}

#[test]
fn enumerate_rg_counts() {
    let s = stdout(&["enumerate", "rg", "5", "3"]);
    assert_eq!(s.lines().count(), 25);
    let j = stdout(&["enumerate", "allowable-rooks", "5", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
}

#[test]
fn dot_pi_5_2() {
    let s = stdout(&["poset", "pi", "5", "2", "--dot"]);
    assert_eq!(s.matches("color=red").count(), 7);
    assert!(s.starts_with("digraph") || s.contains("digraph"));
    let j = stdout(&["poset", "gamma", "4", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    let nodes = v["nodes"].as_array().or(v["elements"].as_array()).unwrap();
    assert_eq!(nodes.len(), 11);
}

#[test]
fn poset_text_reports_acyclic() {
    let s = stdout(&["poset", "gamma", "5", "2", "--match", "--decompose"]);
    assert!(s.contains("acyclic: true"));
}

#[test]
fn homology_json_torsion_free() {
    let s = stdout(&["homology", "pi", "5", "3", "--json", "--matrices"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    let ranks = v["ranks"].as_array().unwrap();
    let total: u64 = ranks.iter().map(|r| r["dim"].as_u64().unwrap()).sum();
    assert!(ranks.iter().all(|r| r["invariant_factors"].as_array().unwrap().is_empty()));
    let text = stdout(&["poset", "pi", "5", "3", "--match"]);
    let unmatched = text.lines().find_map(|l| l.strip_prefix("unmatched: ")).unwrap();
    assert_eq!(total as usize, unmatched.split_whitespace().count());
}

#[test]
fn verify_passes_and_writes_output() {
    let dir = std::env::temp_dir().join(format!("qtstirling-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["verify", "statistics", "--n-max", "5", "--json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.is_object());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_arguments_fail() {
    let out = run(&["poset", "pi", "2", "3"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
    let out = run(&["table", "bogus"]);
    assert!(!out.status.success());
}
