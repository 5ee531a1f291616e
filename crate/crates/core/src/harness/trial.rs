use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, SamplingMode};
use crate::decomposition::{decompose, ComponentKind};
use crate::error::{Error, Result};
use crate::expansion::{certify, path_upper_bound, ExpansionCertificate, ExpansionMode, DEFAULT_EXHAUSTIVE_LIMIT};
use crate::graph::Multigraph;
use crate::pairing::{project, sample_configuration_with, sample_simple_with, DegreeSequence, DEFAULT_RETRY_CAP};
use crate::percolation::{apply_deletion, bernoulli_subset};
use crate::rng::{stream, stream_rng};
use crate::theory::mu_raw;

/// Everything measured in one trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    /// Pairings drawn before a simple one was found (1 in multigraph mode).
    pub attempts: u32,
    pub r: usize,
    /// `N_0..N_d`.
    pub census: Vec<usize>,
    /// `mu_0..mu_d`.
    pub mu: Vec<f64>,
    /// Pairs of the surviving configuration.
    pub pair_count: usize,
    pub giant_size: usize,
    pub component_count: usize,
    pub max_isolated_tree_size: usize,
    /// Every non-giant component is a tree on at most `K` vertices.
    pub others_small_trees: bool,
    /// Every non-giant component is a single vertex.
    pub others_isolated_vertices: bool,
    /// Bare cycles of the 2-core.
    pub isolated_cycle_count: usize,
    pub two_core_size: usize,
    pub two_core_edges: usize,
    /// `N'_0..N'_d` over the 2-core.
    pub core_census: Vec<usize>,
    pub longest_deg2_run: usize,
    /// `2/(k-1)` for the longest run `k`, when it applies.
    pub path_upper_bound: Option<f64>,
    pub max_bush_size: usize,
    pub connected: bool,
    pub expansion: Option<ExpansionCertificate>,
    pub runtime_ms: Option<u64>,
}

/// The percolated graph of one trial, before any measurement.
#[derive(Clone, Debug)]
pub struct TrialGraph {
    pub attempts: u32,
    pub r: usize,
    pub census: Vec<usize>,
    pub pair_count: usize,
    pub graph: Multigraph,
}

/// Samples and percolates the graph of trial `index`. The pairing uses
/// stream `SAMPLE` and the deletion set stream `DELETE` of the trial seed.
pub fn trial_graph(config: &ExperimentConfig, index: u64) -> Result<TrialGraph> {
    config.validate()?;
    let seed = config.trial_seed(index);
    let seq = DegreeSequence::regular(config.n, config.d)?;
    let mut rng = stream_rng(seed, stream::SAMPLE);
    let (pairing, attempts) = match config.mode {
        SamplingMode::SimpleGraph => {
            let s = sample_simple_with(&seq, &mut rng, DEFAULT_RETRY_CAP)?;
            (s.configuration, s.attempts)
        }
        SamplingMode::Multigraph => (sample_configuration_with(&seq, &mut rng)?, 1),
    };
    let deleted = bernoulli_subset(config.n, config.deletion_probability(), &mut stream_rng(seed, stream::DELETE));
    let outcome = apply_deletion(&pairing, &deleted)?;
    Ok(TrialGraph {
        attempts,
        r: outcome.r(),
        pair_count: outcome.survivor.pair_count(),
        graph: project(&outcome.survivor),
        census: outcome.census,
    })
}

/// Runs trial `index`: sample, percolate, decompose and optionally certify
/// expansion. Errors carry the trial index and seed.
pub fn run_trial(config: &ExperimentConfig, index: u64) -> Result<TrialRecord> {
    let seed = config.trial_seed(index);
    run_trial_inner(config, index).map_err(|e| Error::Trial { trial: index, seed, source: Box::new(e) })
}

fn run_trial_inner(config: &ExperimentConfig, index: u64) -> Result<TrialRecord> {
    let start = Instant::now();
    let seed = config.trial_seed(index);
    let k = config.k()? as usize;
    let tg = trial_graph(config, index)?;
    let g = &tg.graph;
    let dec = decompose(g, k);
    let comps = &dec.components;

    let mut core_census = dec.core_census.clone();
    core_census.resize(config.d as usize + 1, 0);
    let alpha = config.effective_alpha();
    let mu = (0..=config.d).map(|j| mu_raw(j, config.d, config.n as f64, alpha)).collect();

    let survivors = g.vertex_count();
    let expansion = if config.exhaustive_expansion && (2..=DEFAULT_EXHAUSTIVE_LIMIT).contains(&survivors) {
        Some(certify(g, ExpansionMode::Exact, DEFAULT_EXHAUSTIVE_LIMIT, seed)?)
    } else if config.expansion_bounds && comps.giant_size() >= 2 {
        let giant = &comps.components[comps.giant.expect("non-empty graph")];
        let mut keep = vec![false; survivors];
        for &v in &giant.vertices {
            keep[v as usize] = true;
        }
        Some(certify(&g.induced(&keep).0, ExpansionMode::Bounds, DEFAULT_EXHAUSTIVE_LIMIT, seed)?)
    } else {
        None
    };

    let record = TrialRecord {
        trial: index,
        seed,
        attempts: tg.attempts,
        r: tg.r,
        census: tg.census.clone(),
        mu,
        pair_count: tg.pair_count,
        giant_size: comps.giant_size(),
        component_count: comps.count(),
        max_isolated_tree_size: comps.max_isolated_tree(),
        others_small_trees: comps.others().all(|c| c.kind == ComponentKind::IsolatedTree && c.size() <= k),
        others_isolated_vertices: comps.others().all(|c| c.size() == 1),
        isolated_cycle_count: dec.kernel.isolated_cycles.len(),
        two_core_size: dec.two_core.size(),
        two_core_edges: dec.two_core.graph.edge_count(),
        core_census,
        longest_deg2_run: dec.longest_deg2_run(),
        path_upper_bound: path_upper_bound(dec.longest_deg2_run(), survivors),
        max_bush_size: dec.max_bush_size(),
        connected: comps.is_connected(),
        expansion,
        runtime_ms: config.timing.then(|| start.elapsed().as_millis() as u64),
    };
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exact_trial() {
        let mut cfg = ExperimentConfig::new(12, 3, 0.5, 1, 5);
        cfg.exhaustive_expansion = true;
        let rec = run_trial(&cfg, 0).unwrap();
        let cert = rec.expansion.expect("12 vertices is within the exhaustive limit");
        assert!(cert.exact_beta.is_some());
        assert!(!cert.witness.unwrap().is_empty());
    }

    #[test]
    fn accounting() {
        let mut cfg = ExperimentConfig::new(2000, 4, 0.3, 1, 11);
        cfg.mode = SamplingMode::Multigraph;
        let rec = run_trial(&cfg, 3).unwrap();
        assert_eq!(rec.seed, 14);
        assert_eq!(rec.census.iter().sum::<usize>(), 2000 - rec.r);
        let points: usize = rec.census.iter().enumerate().map(|(j, c)| j * c).sum();
        assert_eq!(points, 2 * rec.pair_count);
        assert!(rec.two_core_size <= 2000 - rec.r);
        assert!(rec.two_core_edges <= rec.pair_count);
        // a core vertex can lose degree to its bush, so compare totals
        let core: usize = rec.core_census.iter().sum();
        let deg2plus: usize = rec.census[2..].iter().sum();
        assert!(core <= deg2plus);
    }

    #[test]
    fn deterministic() {
        let cfg = ExperimentConfig::new(500, 3, 0.4, 1, 99);
        assert_eq!(run_trial(&cfg, 0).unwrap(), run_trial(&cfg, 0).unwrap());
    }
}
