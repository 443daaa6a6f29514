use std::path::PathBuf;
use std::process::{Command, Output};

fn rankmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankmod"))
        .args(args)
        .env_remove("RANKMOD_BUDGET_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rankmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn count_rows() {
    let o = rankmod(&["count", "--kind", "two_neighbor", "--n", "4", "--k", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,kind,k,count,log2_count,capacity_ratio"));
    assert!(lines.next().unwrap().starts_with("4,two_neighbor,1,18,"));
    let full = stdout(&rankmod(&["count", "--kind", "two_neighbor", "--n", "4", "--k", "3"]));
    assert!(full.lines().nth(1).unwrap().starts_with("4,two_neighbor,3,24,4.58"));
    let asym = stdout(&rankmod(&["count", "--kind", "asym_two_neighbor", "--n", "4", "--k", "1"]));
    assert!(asym.lines().nth(1).unwrap().starts_with("4,asym_two_neighbor,1,20,"));
}

#[test]
fn count_json_and_budget() {
    let o = rankmod(&["count", "--n", "3:4", "--k", "1", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[1]["count"], 18);
    assert_eq!(rows[1]["kind"], "two_neighbor");
    let o = rankmod(&["count", "--n", "9", "--k", "1", "--budget-n", "8"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_rankmod"))
        .args(["count", "--n", "9", "--k", "1"])
        .env("RANKMOD_BUDGET_N", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rankmod(&["count", "--kind", "bogus", "--n", "4"]).status.code(), Some(2));
    assert_eq!(rankmod(&["count", "--n", "5:4"]).status.code(), Some(2));
    assert_eq!(rankmod(&["frobnicate"]).status.code(), Some(2));
    let o = rankmod(&["construct", "csym", "--n", "5", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not divide"));
    assert_eq!(rankmod(&["capacity", "--eps1", "1.5"]).status.code(), Some(2));
}

#[test]
fn construct_csym_reports_formula() {
    let o = rankmod(&["construct", "csym", "--n", "4", "--k", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n=4 k=1 kind=two_neighbor size=8"));
    assert_eq!(text.lines().count(), 9);
    assert_eq!(String::from_utf8_lossy(&o.stderr).trim(), "size=8 formula=8");
}

#[test]
fn construct_then_verify() {
    let path = scratch("casym.txt");
    let p = path.to_str().unwrap();
    assert!(rankmod(&["construct", "casym", "--n", "6", "--out", p]).status.success());
    let o = rankmod(&["verify", p]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("violations=0"));

    // a two-neighbor file holding a violating word fails with exit 1
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "n=4 k=1 kind=two_neighbor size=2\n1 2 3 4\n1 4 2 3\n").unwrap();
    let o = rankmod(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation: 1 4 2 3"));
}

#[test]
fn greedy_codebook_verifies_and_detects_close_pairs() {
    let path = scratch("greedy.txt");
    let p = path.to_str().unwrap();
    let o = rankmod(&["construct", "greedy", "--n", "5", "--k", "2", "--d", "3", "--out", p]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().next().unwrap().ends_with("d=3 metric=inversion"));
    assert!(rankmod(&["verify", p]).status.success());
    let o = rankmod(&["verify", p, "--d", "20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn bounds_rows() {
    let o = rankmod(&["bounds", "--n", "4", "--k", "1", "--d", "1:3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    assert_eq!(
        header,
        ["n", "k", "d", "log2_upper_A", "gv_lower", "greedy_size", "sphere_packing_upper", "gv_manhattan_lower"]
    );
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][5], "18");
    assert_eq!(rows[1][4], "4.5");
    for r in &rows {
        let gv: f64 = r[4].parse().unwrap();
        let greedy: f64 = r[5].parse().unwrap();
        let sp: f64 = r[6].parse().unwrap();
        assert!(gv <= greedy && greedy <= sp);
    }
}

#[test]
fn capacity_points() {
    let text = stdout(&rankmod(&["capacity", "--eps1", "0.5", "--eps2", "0.5"]));
    assert!(text.contains("sym_single,0.5,,0.75"));
    assert!(text.contains("asym_single,0.5,,1"));
    assert!(text.contains("\nsym,0.5,0.5,0.75"));
    let far = stdout(&rankmod(&["capacity", "--eps1", "0.5", "--eps2", "1.8", "--format", "json"]));
    let rows: serde_json::Value = serde_json::from_str(&far).unwrap();
    let sym = rows.as_array().unwrap().iter().find(|r| r["surface"] == "sym").unwrap();
    assert!((sym["value"].as_f64().unwrap() - 0.1).abs() < 1e-12);
    let grid = stdout(&rankmod(&["capacity", "--grid", "3"]));
    // 3 single rows of each kind plus 9 points of each surface
    assert_eq!(grid.lines().count(), 1 + 6 + 18);
}

#[test]
fn balls_and_distances() {
    let text = stdout(&rankmod(&["balls", "--n", "4", "--r", "1"]));
    assert_eq!(text.lines().nth(1).unwrap(), "4,1,4,2");
    let text = stdout(&rankmod(&["distance", "--sigma", "2 1 3", "--pi", "1 2 3"]));
    assert_eq!(text.lines().nth(1).unwrap(), "2 1 3,1 2 3,1,1,2,true");
    assert_eq!(rankmod(&["distance", "--sigma", "1 1 3", "--pi", "1 2 3"]).status.code(), Some(2));
}

#[test]
fn sampled_sandwich_depends_on_seed_only() {
    let a = rankmod(&["sample-sandwich", "--n", "10", "--samples", "500", "--seed", "3"]);
    let b = rankmod(&["sample-sandwich", "--n", "10", "--samples", "500", "--seed", "3"]);
    let c = rankmod(&["sample-sandwich", "--n", "10", "--samples", "500", "--seed", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).lines().nth(1).unwrap().starts_with("10,500,3,0,"));
}

#[test]
fn paired_count_matches_formula() {
    let text = stdout(&rankmod(&["paired", "--ell", "3", "--m", "4"]));
    assert_eq!(text.lines().nth(1).unwrap(), "3,4,90,90");
    assert_eq!(rankmod(&["paired", "--ell", "3", "--m", "3"]).status.code(), Some(2));
}
