use percolab::harness::{
    emit_report, from_json, run_experiment, to_csv, to_json, uniformity_suite, ExperimentConfig, ReportFormat,
    SamplingMode,
};

fn config() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(4000, 4, 0.35, 8, 1234);
    cfg.expansion_bounds = true;
    cfg
}

#[test]
fn reports_are_byte_identical_across_worker_counts() {
    let mut cfg = config();
    cfg.workers = Some(1);
    let a = run_experiment(&cfg).unwrap();
    cfg.workers = Some(3);
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(to_csv(&a), to_csv(&b));
    // the config echo differs only in the worker count
    let mut b = b;
    b.config.workers = Some(1);
    assert_eq!(to_json(&a), to_json(&b));
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config();
    cfg.trials = 2;
    cfg.mode = SamplingMode::Multigraph;
    let rep = run_experiment(&cfg).unwrap();
    let paths = emit_report(&rep, dir.path(), &[ReportFormat::Csv, ReportFormat::Structured]).unwrap();
    let csv = std::fs::read_to_string(&paths[0]).unwrap();
    assert_eq!(csv.lines().count(), 3);
    let json = std::fs::read_to_string(&paths[1]).unwrap();
    assert_eq!(from_json(&json).unwrap(), rep);
}

#[test]
fn records_satisfy_accounting() {
    let rep = run_experiment(&config()).unwrap();
    assert!(rep.failures.is_empty());
    for r in &rep.records {
        assert_eq!(r.census.iter().sum::<usize>(), 4000 - r.r);
        let points: usize = r.census.iter().enumerate().map(|(j, c)| j * c).sum();
        assert_eq!(points, 2 * r.pair_count);
        assert!(r.two_core_size <= 4000 - r.r);
        assert!(r.two_core_edges <= r.pair_count);
        assert!(r.giant_size <= 4000 - r.r);
        let cert = r.expansion.as_ref().unwrap();
        assert!(cert.lower_bound.unwrap() <= cert.upper_bound.unwrap() + 1e-12);
    }
}

#[test]
fn huge_alpha_deletes_nothing() {
    let rep = run_experiment(&ExperimentConfig::new(2000, 3, 50.0, 5, 3)).unwrap();
    assert!(rep.records.iter().all(|r| r.r == 0));
    assert_eq!(rep.indicators.connected, 1.0);
}

#[test]
fn uniformity_suite_passes() {
    let rep = uniformity_suite(77).unwrap();
    assert_eq!(rep.matching.cells, 15);
    assert!(rep.matching.p_value > 0.001);
    for g in &rep.conditional {
        if let Some(t) = &g.test {
            assert!(t.p_value > 0.001, "{:?}", g.degrees);
        }
    }
    let full = rep.conditional.iter().find(|g| g.degrees == vec![2, 2, 2, 2]).unwrap();
    assert_eq!(full.matchings, 105);
}
