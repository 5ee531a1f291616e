//! Random bucket deletion.
//!
//! A deletion set `R` is drawn by including every bucket independently with
//! probability `p` (usually `p = n^-alpha`). Removing `R` from a
//! configuration drops its buckets, every pair touching them, and the far
//! endpoint of each such pair. Survivors are relabelled in order, and the
//! relabelling maps are kept so results can be reported in original labels.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairing::{Configuration, DegreeSequence};
use crate::rng::{stream, stream_rng, SeededRng};
use crate::theory;

/// How the per-bucket deletion probability is specified.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionRate {
    /// `p = n^-alpha`.
    Exponent(f64),
    /// `p` given directly.
    Probability(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeletionParams {
    pub n: usize,
    pub rate: DeletionRate,
    pub seed: u64,
}

impl DeletionParams {
    pub fn with_alpha(n: usize, alpha: f64, seed: u64) -> Self {
        DeletionParams { n, rate: DeletionRate::Exponent(alpha), seed }
    }

    pub fn with_probability(n: usize, p: f64, seed: u64) -> Self {
        DeletionParams { n, rate: DeletionRate::Probability(p), seed }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self.rate {
            DeletionRate::Exponent(a) => Some(a),
            DeletionRate::Probability(_) => None,
        }
    }

    /// The deletion probability, which must lie strictly inside (0, 1).
    pub fn probability(&self) -> Result<f64> {
        let p = match self.rate {
            DeletionRate::Exponent(alpha) => {
                if !(alpha > 0.0) {
                    return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
                }
                (self.n as f64).powf(-alpha)
            }
            DeletionRate::Probability(p) => p,
        };
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!("deletion probability {p} is not in (0, 1)")));
        }
        Ok(p)
    }
}

/// Chooses each of `params.n` buckets independently with the configured
/// probability. Labels are returned in ascending order.
pub fn choose_deletion_set(params: &DeletionParams) -> Result<Vec<u32>> {
    let p = params.probability()?;
    let mut rng = stream_rng(params.seed, stream::DELETE);
    Ok(bernoulli_subset(params.n, p, &mut rng))
}

pub(crate) fn bernoulli_subset(n: usize, p: f64, rng: &mut SeededRng) -> Vec<u32> {
    (0..n as u32).filter(|_| rng.random_bool(p)).collect()
}

/// Result of deleting a bucket set from a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PercolationOutcome {
    /// Deleted original bucket labels, ascending.
    pub deleted: Vec<u32>,
    /// Surviving pairing over `n - r` relabelled buckets.
    pub survivor: Configuration,
    /// Original label of each surviving bucket; strictly increasing.
    pub bucket_relabel: Vec<u32>,
    /// Original global point index of each surviving point; strictly
    /// increasing, so it is order-preserving within every bucket.
    pub point_relabel: Vec<u32>,
    /// `N_0..N_d`: surviving buckets with each remaining degree.
    pub census: Vec<usize>,
    /// Bucket count before deletion.
    pub original_buckets: usize,
}

impl PercolationOutcome {
    pub fn r(&self) -> usize {
        self.deleted.len()
    }

    /// Original label and within-bucket index of surviving point `global`.
    pub fn original_point(&self, original: &Configuration, global: usize) -> crate::pairing::Point {
        original.point(self.point_relabel[global] as usize)
    }
}

/// Removes the buckets in `deleted` from `config`.
///
/// `deleted` may be in any order and may repeat labels; every label must
/// name a bucket of `config`.
pub fn apply_deletion(config: &Configuration, deleted: &[u32]) -> Result<PercolationOutcome> {
    let n = config.bucket_count();
    let mut dead = vec![false; n];
    for &b in deleted {
        if b as usize >= n {
            return Err(Error::domain(format!("bucket {b} is not in 0..{n}")));
        }
        dead[b as usize] = true;
    }
    let deleted: Vec<u32> = (0..n as u32).filter(|&b| dead[b as usize]).collect();

    let owner = config.owners();
    let partner = config.partners();
    let seq = config.degree_sequence();

    let mut new_index = vec![u32::MAX; partner.len()];
    let mut bucket_relabel = Vec::with_capacity(n - deleted.len());
    let mut point_relabel = Vec::new();
    let mut degrees = Vec::with_capacity(n - deleted.len());
    for b in 0..n {
        if dead[b] {
            continue;
        }
        bucket_relabel.push(b as u32);
        let first = seq.first_point(b);
        let mut kept = 0;
        for g in first..first + seq.degrees()[b] as usize {
            if !dead[owner[partner[g] as usize] as usize] {
                new_index[g] = point_relabel.len() as u32;
                point_relabel.push(g as u32);
                kept += 1;
            }
        }
        degrees.push(kept);
    }
    let new_partner = point_relabel
        .iter()
        .map(|&g| new_index[partner[g as usize] as usize])
        .collect();
    let max_degree = seq.max_degree() as usize;
    let mut census = vec![0usize; max_degree + 1];
    for &d in &degrees {
        census[d as usize] += 1;
    }
    let survivor_seq = DegreeSequence::new(degrees).expect("survivor points are matched in pairs");
    Ok(PercolationOutcome {
        deleted,
        survivor: Configuration::from_partner_unchecked(survivor_seq, new_partner),
        bucket_relabel,
        point_relabel,
        census,
        original_buckets: n,
    })
}

/// Observed degree counts together with their predicted means.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeCensus {
    pub counts: Vec<usize>,
    /// `mu_0..mu_d`, present when the deletion exponent is known.
    pub predicted: Option<Vec<f64>>,
}

pub fn degree_census(outcome: &PercolationOutcome, alpha: Option<f64>) -> DegreeCensus {
    let d = outcome.census.len() - 1;
    let predicted = alpha.map(|a| {
        (0..=d)
            .map(|j| theory::mu_raw(j as u32, d as u32, outcome.original_buckets as f64, a))
            .collect()
    });
    DegreeCensus { counts: outcome.census.clone(), predicted }
}

/// Restores the buckets in `restored` (a subset of the deleted set), giving
/// the outcome of deleting `R \ W` from `original` directly.
pub fn reinstate(
    original: &Configuration,
    outcome: &PercolationOutcome,
    restored: &[u32],
) -> Result<PercolationOutcome> {
    let mut back = restored.to_vec();
    back.sort_unstable();
    back.dedup();
    if let Some(&b) = back.iter().find(|b| outcome.deleted.binary_search(b).is_err()) {
        return Err(Error::domain(format!("bucket {b} was not deleted")));
    }
    let still: Vec<u32> = outcome
        .deleted
        .iter()
        .copied()
        .filter(|b| back.binary_search(b).is_err())
        .collect();
    apply_deletion(original, &still)
}

/// Keeps each deleted bucket deleted with probability `keep_deleted` and
/// reinstates it otherwise. Returns the new outcome and the reinstated set.
pub fn reinstate_random(
    original: &Configuration,
    outcome: &PercolationOutcome,
    keep_deleted: f64,
    seed: u64,
) -> Result<(PercolationOutcome, Vec<u32>)> {
    if !(0.0..=1.0).contains(&keep_deleted) {
        return Err(Error::domain(format!("probability {keep_deleted} is not in [0, 1]")));
    }
    let mut rng = stream_rng(seed, stream::REINSTATE);
    let restored: Vec<u32> = outcome
        .deleted
        .iter()
        .copied()
        .filter(|_| !rng.random_bool(keep_deleted))
        .collect();
    let next = reinstate(original, outcome, &restored)?;
    Ok((next, restored))
}
