use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::trial::{run_trial, TrialRecord};
use crate::error::{Error, Result};
use crate::theory::{isolated_vertex_cap, predictions, Predictions, Regime};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample variance; 0 for a single value.
    pub variance: f64,
    pub count: usize,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let variance = if count > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64
        } else {
            0.0
        };
        Some(Summary { mean, variance, count })
    }
}

/// Fraction of completed trials with each property.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Indicators {
    pub connected: f64,
    /// Giant component holds at least 99% of the survivors.
    pub giant_99: f64,
    /// Every other component is a tree on at most `K` vertices.
    pub all_small_trees: f64,
    pub others_isolated_vertices: f64,
    /// No bush has more than `K` vertices.
    pub bushes_within_k: f64,
    /// Longest degree-2 run is at most `K`.
    pub no_long_runs: f64,
    pub no_core_cycles: f64,
    /// `N_0` is at most `n^((d-2)/(2d-2))`.
    pub n0_under_cap: f64,
    pub n0_zero: f64,
}

/// Observed frequency of a regime's a.a.s. conclusion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeAssertion {
    pub regime: Regime,
    pub name: String,
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub seed: u64,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub config: ExperimentConfig,
    pub k: u32,
    pub regime: Option<Regime>,
    pub predictions: Option<Predictions>,
    pub completed: usize,
    pub failures: Vec<TrialFailure>,
    pub stats: BTreeMap<String, Summary>,
    pub indicators: Indicators,
    pub assertions: Vec<RegimeAssertion>,
    pub records: Vec<TrialRecord>,
}

impl AggregateReport {
    pub fn stat(&self, key: &str) -> Option<Summary> {
        self.stats.get(key).copied()
    }

    pub fn mean(&self, key: &str) -> f64 {
        self.stat(key).map_or(f64::NAN, |s| s.mean)
    }
}

/// Runs every trial of `config` and aggregates the results.
///
/// Trials run on a dedicated thread pool with `config.workers` threads and
/// are collected in index order, so the report does not depend on the
/// worker count. A failing trial is recorded, not fatal.
pub fn run_experiment(config: &ExperimentConfig) -> Result<AggregateReport> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<Result<TrialRecord>> =
        pool.install(|| (0..config.trials).into_par_iter().map(|i| run_trial(config, i)).collect());
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (i, res) in (0..config.trials).zip(results) {
        match res {
            Ok(rec) => records.push(rec),
            Err(e) => failures.push(TrialFailure { trial: i, seed: config.trial_seed(i), error: e.to_string() }),
        }
    }
    aggregate(config, records, failures)
}

/// Builds the report from finished records.
pub fn aggregate(
    config: &ExperimentConfig,
    records: Vec<TrialRecord>,
    failures: Vec<TrialFailure>,
) -> Result<AggregateReport> {
    let k = config.k()?;
    let regime = config.regime();
    let predictions = match regime {
        Some(_) => Some(predictions(&config.model_params()?, &[2, k.max(2)])?),
        None => None,
    };
    let stats = field_stats(&records);
    let indicators = indicators(config, k, &records);
    let assertions = regime.map_or_else(Vec::new, |r| regime_assertions(r, &indicators));
    Ok(AggregateReport {
        config: config.clone(),
        k,
        regime,
        predictions,
        completed: records.len(),
        failures,
        stats,
        indicators,
        assertions,
        records,
    })
}

fn field_stats(records: &[TrialRecord]) -> BTreeMap<String, Summary> {
    let mut columns: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut push = |key: String, v: f64| columns.entry(key).or_default().push(v);
    for rec in records {
        push("r".into(), rec.r as f64);
        for (j, &c) in rec.census.iter().enumerate() {
            push(format!("N_{j}"), c as f64);
        }
        for (j, &c) in rec.core_census.iter().enumerate().skip(2) {
            push(format!("core_N_{j}"), c as f64);
        }
        push("attempts".into(), rec.attempts as f64);
        push("giant_size".into(), rec.giant_size as f64);
        push("component_count".into(), rec.component_count as f64);
        push("max_isolated_tree_size".into(), rec.max_isolated_tree_size as f64);
        push("isolated_cycle_count".into(), rec.isolated_cycle_count as f64);
        push("two_core_size".into(), rec.two_core_size as f64);
        push("longest_deg2_run".into(), rec.longest_deg2_run as f64);
        push("max_bush_size".into(), rec.max_bush_size as f64);
        if let Some(v) = rec.path_upper_bound {
            push("path_upper_bound".into(), v);
        }
        if let Some(cert) = &rec.expansion {
            let fields = [
                ("beta_exact", cert.exact_beta),
                ("beta_lower", cert.lower_bound),
                ("beta_upper", cert.upper_bound),
                ("lambda2", cert.lambda2),
                ("diameter", cert.diameter.map(f64::from)),
            ];
            for (key, v) in fields {
                if let Some(v) = v {
                    push(key.into(), v);
                }
            }
        }
        if let Some(ms) = rec.runtime_ms {
            push("runtime_ms".into(), ms as f64);
        }
    }
    columns.into_iter().filter_map(|(k, v)| Summary::of(&v).map(|s| (k, s))).collect()
}

fn indicators(config: &ExperimentConfig, k: u32, records: &[TrialRecord]) -> Indicators {
    if records.is_empty() {
        return Indicators::default();
    }
    let cap = isolated_vertex_cap(config.n, config.d);
    let frac = |f: &dyn Fn(&TrialRecord) -> bool| {
        records.iter().filter(|r| f(r)).count() as f64 / records.len() as f64
    };
    let k = k as usize;
    Indicators {
        connected: frac(&|r| r.connected),
        giant_99: frac(&|r| r.giant_size as f64 >= 0.99 * (config.n - r.r) as f64),
        all_small_trees: frac(&|r| r.others_small_trees),
        others_isolated_vertices: frac(&|r| r.others_isolated_vertices),
        bushes_within_k: frac(&|r| r.max_bush_size <= k),
        no_long_runs: frac(&|r| r.longest_deg2_run <= k),
        no_core_cycles: frac(&|r| r.isolated_cycle_count == 0),
        n0_under_cap: frac(&|r| r.census[0] as f64 <= cap),
        n0_zero: frac(&|r| r.census[0] == 0),
    }
}

/// The conclusions of every regime implied by `regime`, with the
/// fraction of trials in which they were observed.
fn regime_assertions(regime: Regime, ind: &Indicators) -> Vec<RegimeAssertion> {
    let mut out = Vec::new();
    let mut add = |r: Regime, name: &str, fraction: f64| {
        if regime.implies(r) {
            out.push(RegimeAssertion { regime: r, name: name.into(), fraction });
        }
    };
    add(Regime::A, "giant component with small isolated trees", ind.giant_99.min(ind.all_small_trees));
    add(Regime::B, "non-giant components are isolated vertices", ind.others_isolated_vertices);
    add(Regime::B, "isolated vertex count under cap", ind.n0_under_cap);
    add(Regime::C, "connected", ind.connected);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_count_does_not_matter() {
        let mut cfg = ExperimentConfig::new(3000, 4, 0.4, 6, 21);
        cfg.workers = Some(1);
        let one = run_experiment(&cfg).unwrap();
        cfg.workers = Some(4);
        let four = run_experiment(&cfg).unwrap();
        assert_eq!(one.records, four.records);
        assert_eq!(one.stats, four.stats);
    }

    #[test]
    fn single_trial_aggregate() {
        let cfg = ExperimentConfig::new(2000, 3, 0.5, 1, 2);
        let rep = run_experiment(&cfg).unwrap();
        let rec = &rep.records[0];
        assert_eq!(rep.mean("r"), rec.r as f64);
        assert_eq!(rep.mean("giant_size"), rec.giant_size as f64);
        assert_eq!(rep.stat("r").unwrap().variance, 0.0);
        assert_eq!(rep.indicators.connected, if rec.connected { 1.0 } else { 0.0 });
    }

    #[test]
    fn failures_are_recorded() {
        // there is no simple 3-regular graph on 2 vertices
        let cfg = ExperimentConfig::new(2, 3, 0.5, 2, 0);
        let rep = run_experiment(&cfg).unwrap();
        assert_eq!(rep.completed, 0);
        assert_eq!(rep.failures.len(), 2);
        assert!(rep.failures[0].error.contains("trial 0"));
    }

    #[test]
    fn regime_c_lists_all_assertions() {
        let ind = Indicators { connected: 1.0, ..Default::default() };
        let a = regime_assertions(Regime::C, &ind);
        assert_eq!(a.len(), 4);
        assert_eq!(regime_assertions(Regime::A, &ind).len(), 1);
    }
}
