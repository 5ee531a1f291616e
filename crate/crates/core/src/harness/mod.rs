//! Seeded Monte Carlo experiments over the whole pipeline.
//!
//! Trial `i` of an experiment uses seed `base_seed + i`, split into
//! independent streams for sampling, deletion and the spectral start
//! vector, so results do not depend on how trials are scheduled.

pub mod acceptance;
mod config;
mod experiment;
mod report;
mod trial;
mod uniformity;

pub use self::config::{ExperimentConfig, SamplingMode};
pub use self::experiment::{
    aggregate, run_experiment, AggregateReport, Indicators, RegimeAssertion, Summary, TrialFailure,
};
pub use self::report::{csv_header, emit_report, from_json, to_csv, to_json, ReportFormat};
pub use self::trial::{run_trial, trial_graph, TrialGraph, TrialRecord};
pub use self::uniformity::{
    chi_square_uniform, conditional_uniformity, enumerate_matchings, matching_uniformity, pair_frequency,
    uniformity_suite, ChiSquare, ConditionalGroup, PairFrequency, UniformityReport,
};
