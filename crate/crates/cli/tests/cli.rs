use std::path::Path;
use std::process::{Command, Output};

fn percolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_percolab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sample_percolate_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.txt");
    let outcome = dir.path().join("o.txt");
    assert!(percolab(&["sample", "--n", "30", "--d", "3", "--seed", "4", "-o", arg(&config)]).status.success());
    let text = std::fs::read_to_string(&config).unwrap();
    assert_eq!(text.lines().count(), 1 + 45);

    let out = percolab(&["percolate", "--p", "0.2", "--seed", "1", "-i", arg(&config), "-o", arg(&outcome)]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&outcome).unwrap();
    let deleted = text.lines().find_map(|l| l.strip_prefix("deleted:")).unwrap().split_whitespace().count();

    let v = json(&percolab(&["analyze", "-i", arg(&outcome)]));
    assert_eq!(v["vertices"].as_u64().unwrap() as usize, 30 - deleted);
    let census: Vec<u64> = v["census"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(census.iter().sum::<u64>() as usize, 30 - deleted);
    let points: u64 = census.iter().enumerate().map(|(j, c)| j as u64 * c).sum();
    assert_eq!(points, 2 * v["edges"].as_u64().unwrap());
}

#[test]
fn same_seed_same_output() {
    let a = percolab(&["sample", "--n", "20", "--d", "4", "--seed", "9", "--multigraph"]);
    let b = percolab(&["sample", "--n", "20", "--d", "4", "--seed", "9", "--multigraph"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn expansion_on_an_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.txt");
    // an 8-cycle: the best set is a 4-arc with 2 outside neighbours
    let mut text = String::from("# vertices 8\n");
    for v in 1..=8 {
        text.push_str(&format!("{} {}\n", v, v % 8 + 1));
    }
    std::fs::write(&path, text).unwrap();
    let v = json(&percolab(&["expansion", "--exact", "-i", arg(&path)]));
    assert_eq!(v["exact_beta"].as_f64().unwrap(), 0.5);
    assert_eq!(v["diameter"].as_u64().unwrap(), 4);
    let v = json(&percolab(&["expansion", "--bounds", "-i", arg(&path)]));
    assert!(v["exact_beta"].is_null());
    assert!(v["lower_bound"].as_f64().unwrap() <= 0.5);
}

#[test]
fn theory_prints_predictions() {
    let v = json(&percolab(&["theory", "--n", "10000", "--d", "4", "--alpha", "0.5", "--paths", "2"]));
    assert_eq!(v["k"].as_u64().unwrap(), 3);
    assert!((v["mu"][4].as_f64().unwrap() - 10_000.0).abs() < 1e-6);
    assert_eq!(v["expected_deg2_paths"].as_array().unwrap().len(), 1);
}

#[test]
fn experiment_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "n = 400\nd = 3\nalpha = 0.6\ntrials = 3\nbase_seed = 5\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = percolab(&["experiment", "--config", arg(&config), "-o", arg(&out_dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(out_dir.join("trials.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["completed"].as_u64().unwrap(), 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["percolate", "-i", "x.txt"][..],
        &["expansion", "--exact", "--bounds", "-i", "x.txt"],
        &["sample", "--n", "ten", "--d", "3"],
        &["no-such-command"],
        &["analyze", "-i", "/definitely/missing"],
    ] {
        assert_eq!(percolab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "n = 100\nd = 3\nalpha = 0.5\np = 0.1\n").unwrap();
    let out = percolab(&["experiment", "--config", arg(&config), "-o", arg(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config"));
}

#[test]
fn help_exits_0() {
    assert_eq!(percolab(&["--help"]).status.code(), Some(0));
}
