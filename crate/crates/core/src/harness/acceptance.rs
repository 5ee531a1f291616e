//! The acceptance suite: one check per criterion, each with its own fixed
//! seed. Thresholds live here and nowhere else.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use super::config::{ExperimentConfig, SamplingMode};
use super::experiment::{run_experiment, AggregateReport};
use super::trial::run_trial;
use super::uniformity::{conditional_uniformity, matching_uniformity, pair_frequency};
use crate::decomposition::{classify_components, two_core};
use crate::error::Result;
use crate::expansion::{
    exact_vertex_expansion, reinstatement_expansion_check, run_upper_bound, spectral_lower_bound,
};
use crate::graph::Multigraph;
use crate::pairing::{project, sample_configuration_with, sample_simple_regular, DegreeSequence};
use crate::percolation::{apply_deletion, bernoulli_subset, choose_deletion_set, reinstate_random, DeletionParams};
use crate::rng::rng_from_seed;
use crate::theory::mu_raw;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {} ({:.1}s)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn seed_for(id: u8) -> u64 {
    20_000 + 100 * id as u64
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name, pass, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Uniformity of the pairing sampler over the 15 matchings of 6 points.
pub fn criterion_1() -> CriterionResult {
    timed(1, "sampler uniformity", || {
        let start = Instant::now();
        let chi = matching_uniformity(3, 2, 15_000, seed_for(1))?;
        let secs = start.elapsed().as_secs_f64();
        Ok((
            chi.cells == 15 && chi.p_value > 0.001 && secs < 5.0,
            format!("{} cells, chi2 = {:.2}, p = {:.4}, {:.2}s", chi.cells, chi.statistic, chi.p_value, secs),
        ))
    })
}

/// Frequency of a fixed pair among pairings of 12 points.
pub fn criterion_2() -> CriterionResult {
    timed(2, "pair probability", || {
        let f = pair_frequency(6, 100_000, seed_for(2))?;
        Ok((
            f.z.abs() <= 4.0,
            format!("{} / {} vs 1/11, z = {:.2}", f.hits, f.samples, f.z),
        ))
    })
}

/// The shared d = 4, alpha = 0.5, n = 10^5 run behind criteria 3 to 6.
pub fn regime_a_experiment() -> Result<(AggregateReport, f64)> {
    let start = Instant::now();
    let report = run_experiment(&ExperimentConfig::new(100_000, 4, 0.5, 50, seed_for(3)))?;
    Ok((report, start.elapsed().as_secs_f64()))
}

fn all_completed(report: &AggregateReport) -> Result<()> {
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(crate::Error::Config(format!("trial {} failed: {}", f.trial, f.error))),
    }
}

/// Criteria 3 to 6 from one shared experiment.
pub fn criteria_3_to_6(report: &AggregateReport, seconds: f64) -> Vec<CriterionResult> {
    let ind = report.indicators;
    let ok = all_completed(report);
    let with = |id, name, f: &dyn Fn() -> (bool, String)| {
        timed(id, name, || {
            ok.as_ref().map_err(|e| crate::Error::Config(e.to_string()))?;
            Ok(f())
        })
    };
    let mu3 = mu_raw(3, 4, 100_000.0, 0.5);
    vec![
        with(3, "degree census", &|| {
            let n3 = report.mean("N_3");
            let n2 = report.mean("N_2");
            (
                (n3 / mu3 - 1.0).abs() <= 0.1 && (3.0..=9.0).contains(&n2) && ind.n0_zero >= 0.99 && seconds < 60.0,
                format!(
                    "mean N_3 = {n3:.1} (mu_3 = {mu3:.1}), mean N_2 = {n2:.2}, N_0 = 0 in {:.0}%, {seconds:.1}s",
                    100.0 * ind.n0_zero
                ),
            )
        }),
        with(4, "giant component and small trees", &|| {
            let frac = report.records.iter().filter(|r| {
                r.giant_size as f64 >= 0.99 * (100_000 - r.r) as f64 && r.others_small_trees
            });
            let frac = frac.count() as f64 / report.records.len() as f64;
            (
                report.k == 3 && frac >= 0.95,
                format!("K = {}, held in {:.0}% of trials", report.k, 100.0 * frac),
            )
        }),
        with(5, "bush bound", &|| {
            (
                ind.bushes_within_k >= 0.95,
                format!("no bush above K = {} in {:.0}% of trials", report.k, 100.0 * ind.bushes_within_k),
            )
        }),
        with(6, "2-core properties", &|| {
            let core_ok = report
                .records
                .iter()
                .all(|r| r.two_core_size as f64 >= 0.98 * (100_000 - r.r) as f64);
            (
                core_ok && ind.no_core_cycles >= 0.95 && ind.no_long_runs >= 0.9,
                format!(
                    "t >= 0.98(n-r) in every trial: {core_ok}; no core cycles in {:.0}%; longest run <= K in {:.0}%",
                    100.0 * ind.no_core_cycles,
                    100.0 * ind.no_long_runs
                ),
            )
        }),
    ]
}

/// Connectivity when every survivor keeps most of its neighbours.
pub fn criterion_7() -> CriterionResult {
    timed(7, "regime c connectivity", || {
        let report = run_experiment(&ExperimentConfig::new(100_000, 4, 0.4, 50, seed_for(7)))?;
        all_completed(&report)?;
        let c = report.indicators.connected;
        Ok((c >= 0.9, format!("regime {}, connected in {:.0}% of trials", fmt_regime(&report), 100.0 * c)))
    })
}

fn fmt_regime(report: &AggregateReport) -> String {
    report.regime.map_or_else(|| "?".into(), |r| r.to_string())
}

/// Only isolated vertices outside the giant component.
pub fn criterion_8() -> CriterionResult {
    timed(8, "regime b isolated vertices", || {
        let report = run_experiment(&ExperimentConfig::new(100_000, 4, 0.2, 50, seed_for(8)))?;
        all_completed(&report)?;
        let ind = report.indicators;
        let largest_other = report
            .records
            .iter()
            .filter(|r| !r.others_isolated_vertices)
            .map(|r| r.max_isolated_tree_size)
            .max()
            .unwrap_or(0);
        // two degree-1 survivors paired together form an isolated edge
        let mu: Vec<f64> = (0..=4).map(|j| mu_raw(j, 4, 100_000.0, 0.2)).collect();
        let points: f64 = mu.iter().enumerate().map(|(j, m)| j as f64 * m).sum();
        let isolated_edges = mu[1] * mu[1] / (2.0 * points);
        Ok((
            ind.others_isolated_vertices >= 0.9 && ind.n0_under_cap >= 0.95,
            format!(
                "regime {}, only isolated vertices in {:.0}% (largest other tree {largest_other}; \
                 predicted isolated edges {isolated_edges:.2}, P(none) ~ {:.2}), N_0 <= n^(1/3) in {:.0}%, mean N_0 = {:.1}",
                fmt_regime(&report),
                100.0 * ind.others_isolated_vertices,
                (-isolated_edges).exp(),
                100.0 * ind.n0_under_cap,
                report.mean("N_0")
            ),
        ))
    })
}

/// Long degree-2 runs appear when the deletion rate is high.
pub fn criterion_9() -> CriterionResult {
    timed(9, "tightness via long runs", || {
        let report = run_experiment(&ExperimentConfig::new(100_000, 3, 0.18, 50, seed_for(9)))?;
        all_completed(&report)?;
        let long: Vec<_> = report.records.iter().filter(|r| r.longest_deg2_run >= 4).collect();
        let frac = long.len() as f64 / report.records.len() as f64;
        let bounded = long.iter().all(|r| r.path_upper_bound.is_some_and(|b| b <= 2.0 / 3.0 + 1e-12));
        Ok((
            frac >= 0.8 && bounded,
            format!(
                "run >= 4 in {:.0}% of trials (mean longest {:.1}), reported bound <= 2/3: {bounded}",
                100.0 * frac,
                report.mean("longest_deg2_run")
            ),
        ))
    })
}

/// The largest vertex set whose induced subgraph has minimum degree 2,
/// by trying every subset.
pub fn brute_force_two_core(g: &Multigraph) -> Vec<bool> {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force needs a small graph");
    let mut best = 0u32;
    for mask in 1u32..(1 << n) {
        if mask.count_ones() <= best.count_ones() {
            continue;
        }
        let mut deg = vec![0u32; n];
        for &(u, v) in g.edges() {
            if mask >> u & 1 == 1 && mask >> v & 1 == 1 {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
        }
        if (0..n).all(|v| mask >> v & 1 == 0 || deg[v] >= 2) {
            best = mask;
        }
    }
    (0..n).map(|v| best >> v & 1 == 1).collect()
}

fn random_multigraph(rng: &mut crate::rng::SeededRng, max_n: usize) -> Multigraph {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(0..=2 * n);
    let edges = (0..m)
        .map(|_| (rng.random_range(0..n as u32), rng.random_range(0..n as u32)))
        .collect();
    Multigraph::from_edges(n, edges).expect("labels in range")
}

/// A connected graph on 4 to 16 vertices: the giant component of a
/// lightly percolated random regular multigraph.
fn random_connected(rng: &mut crate::rng::SeededRng) -> Multigraph {
    loop {
        let n = rng.random_range(4..=16usize);
        let d = if n % 2 == 1 { 4 } else { rng.random_range(3..=4u32) };
        let seq = DegreeSequence::regular(n, d).expect("even point count");
        let config = sample_configuration_with(&seq, rng).expect("non-empty sequence");
        let p = [0.0, 0.1, 0.2][rng.random_range(0..3)];
        let deleted = if p > 0.0 { bernoulli_subset(n, p, rng) } else { Vec::new() };
        let g = project(&apply_deletion(&config, &deleted).expect("labels in range").survivor);
        let comps = classify_components(&g, 0);
        let Some(giant) = comps.giant else { continue };
        let mut keep = vec![false; g.vertex_count()];
        for &v in &comps.components[giant].vertices {
            keep[v as usize] = true;
        }
        let (sub, _) = g.induced(&keep);
        if sub.vertex_count() >= 4 {
            return sub;
        }
    }
}

/// Peeling agrees with brute force, and the expansion bounds bracket the
/// exact value.
pub fn criterion_10() -> CriterionResult {
    timed(10, "oracle equivalences", || {
        let mut rng = rng_from_seed(seed_for(10));
        let mut core_agree = 0;
        for _ in 0..1000 {
            let g = random_multigraph(&mut rng, 12);
            if two_core(&g).in_core == brute_force_two_core(&g) {
                core_agree += 1;
            }
        }
        let mut bracket_ok = 0;
        let mut with_upper = 0;
        for i in 0..500u64 {
            let g = random_connected(&mut rng);
            let exact = exact_vertex_expansion(&g, 20)?.ratio.value();
            let lower = spectral_lower_bound(&g, seed_for(10) + i).beta_lower;
            let upper = run_upper_bound(&g);
            with_upper += upper.is_some() as usize;
            if lower <= exact + 1e-9 && upper.is_none_or(|u| exact <= u.value + 1e-12) {
                bracket_ok += 1;
            }
        }
        Ok((
            core_agree == 1000 && bracket_ok == 500,
            format!(
                "2-core {core_agree}/1000; lower <= beta <= upper {bracket_ok}/500 ({with_upper} with a path bound)"
            ),
        ))
    })
}

/// Uniformity of the percolated pairing given its degree sequence.
pub fn criterion_11() -> CriterionResult {
    timed(11, "conditional uniformity", || {
        let groups = conditional_uniformity(4, 2, 0.5, 100_000, seed_for(11))?;
        let tested: Vec<_> = groups.iter().filter_map(|g| g.test.as_ref()).collect();
        let worst = tested.iter().map(|t| t.p_value).fold(1.0, f64::min);
        Ok((
            tested.iter().all(|t| t.p_value > 0.001),
            format!(
                "{} degree sequences, {} tested, {} too sparse to test, min p = {worst:.4}",
                groups.len(),
                tested.len(),
                groups.len() - tested.len()
            ),
        ))
    })
}

/// Two-stage deletion matches direct deletion, and reinstating far-apart
/// vertices at most halves the expansion.
pub fn criterion_12() -> CriterionResult {
    timed(12, "reinstatement", || {
        let (n, d, alpha, trials) = (10_000usize, 4u32, 0.9f64, 200u64);
        let nf = n as f64;
        let p = nf.powf(-alpha);
        let p1 = nf.powf(-0.75);
        let q = nf.powf(0.75 - alpha);
        let seq = DegreeSequence::regular(n, d)?;
        let mut direct = vec![0u32; n];
        let mut staged = vec![0u32; n];
        let base = seed_for(12);
        for t in 0..trials {
            let seed = base + t;
            for b in choose_deletion_set(&DeletionParams::with_probability(n, p, seed))? {
                direct[b as usize] += 1;
            }
            let config = crate::pairing::sample_configuration(&seq, seed)?;
            let first = apply_deletion(&config, &choose_deletion_set(&DeletionParams::with_probability(n, p1, seed + trials))?)?;
            let (second, _) = reinstate_random(&config, &first, q, seed)?;
            for &b in &second.deleted {
                staged[b as usize] += 1;
            }
        }
        let cells = (n as u64 * trials) as f64;
        let sd = (p * (1.0 - p) / cells).sqrt();
        let freq = |c: &[u32]| c.iter().map(|&x| x as f64).sum::<f64>() / cells;
        let (fd, fs) = (freq(&direct), freq(&staged));
        let pooled_ok = ((fd - p) / sd).abs() <= 3.0 && ((fs - p) / sd).abs() <= 3.0 && ((fs - fd) / (sd * 2f64.sqrt())).abs() <= 3.0;
        // per-bucket counts are Binomial(trials, p): index of dispersion
        let disp = |c: &[u32]| {
            let mean = c.iter().map(|&x| x as f64).sum::<f64>() / n as f64;
            let stat: f64 = c.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (mean * (1.0 - p));
            let z = (stat - (n - 1) as f64) / (2.0 * (n - 1) as f64).sqrt();
            z
        };
        let (zd, zs) = (disp(&direct), disp(&staged));
        let per_bucket_ok = zd.abs() <= 3.0 && zs.abs() <= 3.0;

        let mut rng = rng_from_seed(base + 1);
        let mut oracle_pass = 0;
        let mut min_ratio = f64::INFINITY;
        for i in 0..200u64 {
            let dd = rng.random_range(3..=4u32);
            let nn = if dd == 3 { 2 * rng.random_range(4..=8usize) } else { rng.random_range(8..=16usize) };
            let g = sample_simple_regular(nn, dd, base + 1000 + i)?.graph;
            let target = rng.random_range(1..=3usize);
            let mut order: Vec<u32> = (0..nn as u32).collect();
            order.shuffle(&mut rng);
            let mut w: Vec<u32> = Vec::new();
            for v in order {
                if w.len() == target {
                    break;
                }
                let dist = g.bfs(v as usize);
                if w.iter().all(|&x| dist[x as usize] >= 3) {
                    w.push(v);
                }
            }
            let check = reinstatement_expansion_check(&g, &w, 20)?;
            if check.pass {
                oracle_pass += 1;
            }
            if check.beta_certified > 0.0 {
                min_ratio = min_ratio.min(check.beta_with / check.beta_certified);
            }
        }
        Ok((
            pooled_ok && per_bucket_ok && oracle_pass == 200,
            format!(
                "frequency direct {fd:.3e} staged {fs:.3e} vs {p:.3e} (sd {sd:.1e}); dispersion z {zd:.2} / {zs:.2}; \
                 halved expansion {oracle_pass}/200, min beta/beta' = {min_ratio:.3}"
            ),
        ))
    })
}

/// Diameter against the expansion bound on small exact trials.
pub fn criterion_13() -> CriterionResult {
    timed(13, "diameter bound", || {
        let mut checked = 0;
        let mut passed = 0;
        let mut slack = f64::INFINITY;
        let mut s = seed_for(13);
        for &n in &[10usize, 12, 14, 16, 18, 20] {
            for &d in &[3u32, 4] {
                for &alpha in &[0.5, 0.8, 1.2] {
                    let mut cfg = ExperimentConfig::new(n, d, alpha, 10, s);
                    cfg.exhaustive_expansion = true;
                    cfg.mode = SamplingMode::Multigraph;
                    s += 1000;
                    for i in 0..cfg.trials {
                        let rec = run_trial(&cfg, i)?;
                        let Some(cert) = rec.expansion else { continue };
                        if cert.exact_beta.is_some_and(|b| b > 0.0) {
                            checked += 1;
                            if cert.bound_pass == Some(true) {
                                passed += 1;
                            }
                            if let (Some(dm), Some(b)) = (cert.diameter, cert.diameter_bound) {
                                slack = slack.min(b - dm as f64);
                            }
                        }
                    }
                }
            }
        }
        Ok((
            checked > 0 && passed == checked,
            format!("{passed}/{checked} trials with beta > 0 within the bound, min slack {slack:.2}"),
        ))
    })
}

/// Peak resident memory of this process, from `/proc/self/status`.
pub fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

/// One trial at n = 10^6 without expansion. Memory is the process peak,
/// so this should run before anything else in the process.
pub fn criterion_14() -> CriterionResult {
    timed(14, "performance", || {
        let cfg = ExperimentConfig::new(1_000_000, 4, 0.5, 1, seed_for(14));
        let start = Instant::now();
        let rec = run_trial(&cfg, 0)?;
        let secs = start.elapsed().as_secs_f64();
        let peak = peak_rss_bytes();
        let mem_ok = peak.is_none_or(|b| b < 2 << 30);
        Ok((
            secs < 10.0 && mem_ok,
            format!(
                "{secs:.2}s, peak memory {}, {} attempts, giant {}",
                peak.map_or_else(|| "unknown".into(), |b| format!("{} MiB", b >> 20)),
                rec.attempts,
                rec.giant_size
            ),
        ))
    })
}

/// Runs all criteria, the performance check first, calling `report` as
/// each one finishes.
pub fn run_all(mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    let mut push = |r: CriterionResult, out: &mut Vec<CriterionResult>| {
        report(&r);
        out.push(r);
    };
    push(criterion_14(), &mut out);
    push(criterion_1(), &mut out);
    push(criterion_2(), &mut out);
    match regime_a_experiment() {
        Ok((rep, secs)) => {
            for r in criteria_3_to_6(&rep, secs) {
                push(r, &mut out);
            }
        }
        Err(e) => {
            for (id, name) in [(3, "degree census"), (4, "giant component and small trees"), (5, "bush bound"), (6, "2-core properties")] {
                push(CriterionResult { id, name, pass: false, detail: format!("error: {e}"), seconds: 0.0 }, &mut out);
            }
        }
    }
    for f in [criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13] {
        push(f(), &mut out);
    }
    out
}
