use std::fs;
use std::process::{Command, Output};

fn dpx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpx"))
        .args(args)
        .env_remove("DPX_SEED_BUDGET")
        .output()
        .expect("dpx runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn enumerate_json_is_an_array_with_the_zero_tuple() {
    let out = dpx(&["enumerate", "-m", "3", "-n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let tuples = v.as_array().unwrap();
    assert_eq!(tuples.len(), 28);
    assert!(tuples.iter().all(|t| !(t["m1"] == 3 && t["n1"] == 3)));
    let zero = serde_json::json!({"m":3,"n":3,"m1":1,"n1":1,"a":0,"b":0,"c":0,"r":0,"s":0,"t":0});
    assert!(tuples.contains(&zero));
}

#[test]
fn enumerate_markdown_has_stratum_table() {
    let out = dpx(&["enumerate", "-m", "3", "-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("| 1 | 16 | 6 |"));
    assert!(text.contains("| 3 | 6 | 0 |"));
    assert!(text.contains("| 1 | 1 | 0 | 0 | 0 | 0 | 0 | 0 |"));
}

#[test]
fn even_degree_is_invalid_input() {
    let out = dpx(&["enumerate", "-m", "4", "-n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("m must be odd and >= 3"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn gap_script_asserts_the_order() {
    let out = dpx(&["construct", "-m", "3", "-n", "3", "--tuple", "m1=1,n1=1", "--emit", "gap"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Size(G) = 36"));
}

#[test]
fn cayley_output_is_square_with_identity_first() {
    let out = dpx(&["construct", "-m", "3", "-n", "3", "--tuple", "m1=1,n1=3,a=1,b=1,c=0,r=0,s=0,t=0", "--emit", "cayley"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("order=36"));
    let rows: Vec<Vec<usize>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r.len() == 36));
    assert_eq!(rows[0], (0..36).collect::<Vec<_>>());
}

#[test]
fn construct_json_lists_generators() {
    let out = dpx(&["construct", "-m", "3", "-n", "5", "--tuple", "m1=1,n1=1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 60);
    assert_eq!(v["h_order"], 10);
    assert_eq!(v["k_order"], 6);
    for g in ["x", "y", "z", "w"] {
        assert!(v["generators"][g].is_u64());
    }
}

#[test]
fn bad_tuples_are_invalid_input() {
    let out = dpx(&["construct", "-m", "3", "-n", "3", "--tuple", "m1=2,n1=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("m1 must divide m"));

    let out = dpx(&["construct", "-m", "3", "-n", "3", "--tuple", "m1=3,n1=3", "--emit", "gap"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("condition (c) fails, witness k=1"));

    let out = dpx(&["verify", "-m", "3", "-n", "3", "--tuple", "n1=1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_every_three_five_tuple() {
    let out = dpx(&["enumerate", "-m", "3", "-n", "5", "--format", "json"]);
    let tuples: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!tuples.is_empty());
    for t in tuples {
        let assignments = ["m1", "n1", "a", "b", "c", "r", "s", "t"]
            .iter()
            .map(|k| format!("{k}={}", t[k]))
            .collect::<Vec<_>>()
            .join(",");
        let out = dpx(&["verify", "-m", "3", "-n", "5", "--tuple", &assignments]);
        assert_eq!(out.status.code(), Some(0), "{assignments}: {}", stdout(&out));
        assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 9);
    }
}

#[test]
fn stored_tables_are_rechecked() {
    let dir = tempfile::tempdir().unwrap();
    let tuple = "m1=1,n1=3,a=1,b=1,c=0";
    let good = stdout(&dpx(&["construct", "-m", "3", "-n", "3", "--tuple", tuple, "--emit", "cayley"]));
    let path = dir.path().join("table.csv");
    fs::write(&path, &good).unwrap();
    let p = path.to_str().unwrap();
    let out = dpx(&["verify", "-m", "3", "-n", "3", "--tuple", tuple, "--from-cayley", p]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS relations"));

    // swap two entries of one row: the columns stop being permutations
    let mut lines: Vec<String> = good.lines().map(String::from).collect();
    let mut cells: Vec<&str> = lines[5].split(',').collect();
    cells.swap(3, 7);
    lines[5] = cells.join(",");
    fs::write(&path, lines.join("\n")).unwrap();
    let out = dpx(&["verify", "-m", "3", "-n", "3", "--tuple", tuple, "--from-cayley", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL group axioms"));

    // a valid group table for a different tuple
    let other = stdout(&dpx(&["construct", "-m", "3", "-n", "3", "--tuple", "m1=1,n1=1", "--emit", "cayley"]));
    fs::write(&path, other).unwrap();
    let out = dpx(&["verify", "-m", "3", "-n", "3", "--tuple", tuple, "--from-cayley", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL relations"));
}

#[test]
fn crosscheck_three_three_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cross.json");
    let out = dpx(&["crosscheck", "-m", "3", "-n", "3", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let written = fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["sweep"]["completeness_failures"], 0);
    assert_eq!(v["sweep"]["soundness_failures"], 0);
}

#[test]
fn oracle_output_ignores_worker_count() {
    let one = dpx(&["oracle", "-m", "3", "-n", "3", "--workers", "1"]);
    let eight = dpx(&["oracle", "-m", "3", "-n", "3", "--workers", "8"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    for key in [
        "m",
        "n",
        "seeds_total",
        "propagation_rejected",
        "axiom_rejected",
        "groups_accepted",
        "classes_as_factorizations",
        "completeness_failures",
        "soundness_failures",
    ] {
        assert!(v[key].is_u64(), "{key}");
    }
    assert_eq!(v["seeds_total"], 1_679_616);
}

#[test]
fn oversized_sweeps_exit_with_budget_code() {
    let out = dpx(&["oracle", "-m", "7", "-n", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("exceeds the budget"));

    let out = Command::new(env!("CARGO_BIN_EXE_dpx"))
        .args(["oracle", "-m", "3", "-n", "3"])
        .env("DPX_SEED_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_dpx"))
        .args(["oracle", "-m", "3", "-n", "3", "--budget", "2000000"])
        .env("DPX_SEED_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn zero_workers_are_rejected() {
    let out = dpx(&["oracle", "-m", "3", "-n", "3", "--workers", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_json_lists_every_stratum() {
    let out = dpx(&["classify", "-m", "3", "-n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["strata"]["1,1"], 16);
    assert_eq!(v["strata"]["1,3"], 6);
    assert_eq!(v["strata"]["3,1"], 6);
    assert_eq!(v["strata"]["3,3"], 0);
    assert!(v["oracle"].is_null());
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tuples.json");
    let out = dpx(&["enumerate", "-m", "3", "-n", "3", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 28);
}
