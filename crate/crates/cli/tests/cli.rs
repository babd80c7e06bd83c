use std::fs;
use std::process::{Command, Output};

fn nilgrowth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgrowth"))
        .args(args)
        .env_remove("NILGROWTH_BUDGET_POINTS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn minkowski_suite_is_deterministic() {
    let args = ["verify", "--suite", "minkowski", "--seed", "7", "--dims", "2..4", "--trials", "40"];
    let a = nilgrowth(&args);
    let b = nilgrowth(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("prng,seed,trial,dim,body,covolume,ratio,ratio_approx,holds"));
    assert_eq!(lines.clone().count(), 40);
    assert!(lines.all(|l| l.starts_with("chacha8-v1,7,") && l.ends_with(",true")));
}

#[test]
fn different_seeds_differ() {
    let a = nilgrowth(&["verify", "--suite", "minkowski", "--seed", "1", "--trials", "10"]);
    let b = nilgrowth(&["verify", "--suite", "minkowski", "--seed", "2", "--trials", "10"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn abelian_relation_scales() {
    let o = nilgrowth(&["relations", "--abelian", "8,64", "--max-scale", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["change_scales"], serde_json::json!([2, 5]));
}

#[test]
fn tao_growth_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tao.csv");
    let o = nilgrowth(&["growth", "--group", "heisenberg-tao", "--N", "3", "--n-max", "20", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "n,size,log_ratio");
    assert_eq!(rows.len(), 21);
    assert!(rows[1].starts_with("1,2695,"));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("tao.csv.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["N"], 3);
    let small: f64 = summary["slope_small"].as_str().unwrap().parse().unwrap();
    assert!((2.5..=3.5).contains(&small));
}

#[test]
fn json_round_trips_unchanged() {
    let o = nilgrowth(&["harmonious", "--op", "index"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert_eq!(v["additive_index"], "8");
    assert_eq!(v["multiplicative_index"], "8");
}

#[test]
fn empty_result_is_header_only() {
    let o = nilgrowth(&["verify", "--suite", "exploration", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "prng,seed,trial,dim,family,bodies,change_count,bound,within_bound\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nilgrowth(&["verify"]).status.code(), Some(2));
    assert_eq!(nilgrowth(&["relations", "--abelian", "-3"]).status.code(), Some(2));
    assert_eq!(nilgrowth(&["lattice", "--op", "minima", "--basis", "1,0;0,1", "--body", "ball(1)"]).status.code(), Some(2));
    assert_eq!(nilgrowth(&["lie", "--op", "bch", "--x", "1,2"]).status.code(), Some(2));
    assert_eq!(nilgrowth(&["lie", "--op", "basis", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(nilgrowth(&["verify", "--suite", "minkowski", "--dims", "1..9"]).status.code(), Some(2));
}

#[test]
fn resource_errors_exit_three() {
    let o = nilgrowth(&["lattice", "--op", "explore", "--basis", "1,0;0,1", "--bodies", "cube(100)", "--budget-points", "10"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_nilgrowth"))
        .args(["lattice", "--op", "explore", "--basis", "1,0;0,1", "--bodies", "cube(100)"])
        .env("NILGROWTH_BUDGET_POINTS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = nilgrowth(&["growth", "--group", "heisenberg-Z", "--r-max", "200", "--budget-elements", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    let o = nilgrowth(&["verify", "--suite", "minkowski", "--trials", "5000", "--time-limit", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn bound_violations_exit_four() {
    let o = nilgrowth(&["harmonious", "--op", "sandwich", "--c1", "1", "--c2", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("too small"));
    let o = nilgrowth(&["harmonious", "--op", "scaling", "--c1", "1", "--c2", "1", "--word-radius", "3"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("leaves log"));
}

#[test]
fn config_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"command": "verify", "seed": 11, "parameters": {"suite": "minkowski", "trials": 5, "dims": "2..2"}}"#,
    )
    .unwrap();
    let via_config = nilgrowth(&["verify", "--suite", "pairs", "--seed", "3", "--config", cfg.to_str().unwrap()]);
    let direct = nilgrowth(&["verify", "--suite", "minkowski", "--seed", "11", "--trials", "5", "--dims", "2"]);
    assert_eq!(via_config.status.code(), Some(0), "{}", String::from_utf8_lossy(&via_config.stderr));
    assert_eq!(via_config.stdout, direct.stdout);
    let alone = nilgrowth(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(alone.stdout, direct.stdout);
    assert_eq!(nilgrowth(&["verify", "--config", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn lie_and_lattice_reports() {
    let o = nilgrowth(&["lie", "--op", "bch", "--x", "1,0,0", "--y", "0,1,0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["coords"], serde_json::json!(["1", "1", "1/2"]));
    let o = nilgrowth(&["lattice", "--op", "explore", "--basis", "1,0;0,1", "--bodies", "box(3/2,1/4)|box(3/2,3/2)", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("scale,rank,covolume,changed,index_from_previous"));
    let o = nilgrowth(&["lattice", "--op", "minkowski", "--basis", "1,0;0,1", "--body", "l2(1)"]);
    assert_eq!(o.status.code(), Some(0));
}
