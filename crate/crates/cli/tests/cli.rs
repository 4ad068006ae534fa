use std::fs;
use std::process::{Command, Output};

fn faultnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faultnet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn bounds_report_exact_values_and_ranges() {
    let o = faultnet(&["bounds", "--complete", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("exact: 4"), "{}", stdout(&o));

    let o = faultnet(&["bounds", "--k-partite", "5,5"]);
    assert!(stdout(&o).contains("exact: 6"));

    let o = faultnet(&["bounds", "--k-partite", "2,2,2,3"]);
    let out = stdout(&o);
    assert!(out.contains("lower: 3") && out.contains("upper: 4"), "{out}");

    let o = faultnet(&["bounds", "--complete", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"], 4);
    assert_eq!(v["strategy_size"], 4);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&faultnet(&["bounds", "--complete", "4"])), 2);
    assert_eq!(code(&faultnet(&["bounds"])), 2);
    assert_eq!(code(&faultnet(&["bounds", "--complete", "6", "--k-partite", "3,3"])), 2);
    assert_eq!(code(&faultnet(&["resistance", "--network", "no-such-file.json", "--pair", "0", "1"])), 2);
}

#[test]
fn strategy_plans_are_verified() {
    let o = faultnet(&["strategy", "--complete", "7"]);
    assert_eq!(code(&o), 0);
    let plan: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(plan["measurements"].as_array().unwrap().len(), 5);
    assert_eq!(plan["provenance"].as_array().unwrap().len(), 5);
    assert!(stderr(&o).contains("verified"));

    let o = faultnet(&["strategy", "--k-partite", "4,4,4"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("6 measurements"), "{}", stderr(&o));

    // parts of size two defeat the bipartite construction
    let o = faultnet(&["strategy", "--k-partite", "2,3"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("NOT distinguishing"));
}

#[test]
fn verify_reads_plan_files() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("k6.json");
    let p = plan.to_str().unwrap();
    let o = faultnet(&["strategy", "--complete", "6", "--out", p]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verified"));

    let o = faultnet(&["verify", "--network", "K6", "--plan", p]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("distinguishing: yes"));

    let short = dir.path().join("short.json");
    fs::write(&short, r#"{"mode": "removed", "measurements": [[0, 1], [2, 3]]}"#).unwrap();
    let o = faultnet(&["verify", "--complete", "6", "--plan", short.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("distinguishing: no") && out.contains(" ~ "), "{out}");

    let bad = dir.path().join("range.json");
    fs::write(&bad, r#"{"mode": "removed", "measurements": [[0, 9]]}"#).unwrap();
    let o = faultnet(&["verify", "--complete", "6", "--plan", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("out of range"));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n  \"mode\": \"removed\",\n  \"measurements\": [[0, 1] [2, 3]]\n}").unwrap();
    let o = faultnet(&["verify", "--complete", "6", "--plan", broken.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("line 3") && err.contains("[[0, 1] [2, 3]]"), "{err}");
}

#[test]
fn solve_modes() {
    let o = faultnet(&["solve", "--complete", "6", "--exact"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("optimal: 4") || stdout(&o).contains("optimal: 4"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plan.json");
    let o = faultnet(&["solve", "--network", "K6", "--allow-no-fault", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let plan: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(plan["measurements"].as_array().unwrap().len() <= 5);

    let o = faultnet(&["solve", "--complete", "8", "--greedy", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["size"].as_u64().unwrap() >= 6);
}

#[test]
fn solve_reports_timeout() {
    let o = faultnet(&["solve", "--k-partite", "2,7,7", "--budget", "1"]);
    assert_eq!(code(&o), 3);
    let text = stdout(&o) + &stderr(&o);
    assert!(text.contains("timed out"), "{text}");
}

#[test]
fn resistance_classes_and_delta() {
    let o = faultnet(&["resistance", "--complete", "8", "--pair", "0", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("R(0, 1) = 1/4"));

    let o = faultnet(&["resistance", "--network", "K6", "--pair", "0", "1", "--fault", "0", "1", "--mode", "shorted"]);
    assert!(stdout(&o).contains("R = 0"), "{}", stdout(&o));

    let o = faultnet(&["classes", "--network", "K6", "--measurement", "0", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("3 classes"));

    let o = faultnet(&["delta", "--complete", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("-1/24"), "{}", stdout(&o));
}

#[test]
fn explicit_network_files() {
    let dir = tempfile::tempdir().unwrap();
    let ring = dir.path().join("c4.json");
    fs::write(&ring, r#"{"family": "explicit", "n": 4, "edges": [[0, 1, "1"], [1, 2, "1"], [2, 3, "1"], [3, 0, "1"]]}"#).unwrap();
    let o = faultnet(&["resistance", "--network", ring.to_str().unwrap(), "--pair", "0", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("R(0, 2) = 1"), "{}", stdout(&o));
}
