//! Goodness-of-fit checks for the pairing sampler.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::pairing::{sample_configuration_with, DegreeSequence};
use crate::percolation::{apply_deletion, bernoulli_subset};
use crate::rng::rng_from_seed;

/// All perfect matchings of `points` labelled points, as partner arrays,
/// in lexicographic order.
///
/// ```
/// let all = percolab::harness::enumerate_matchings(6);
/// assert_eq!(all.len(), 15);
/// assert_eq!(all[0], vec![1, 0, 3, 2, 5, 4]);
/// ```
pub fn enumerate_matchings(points: usize) -> Vec<Vec<u32>> {
    fn go(partner: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some(a) = partner.iter().position(|&p| p == u32::MAX) else {
            out.push(partner.clone());
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] == u32::MAX {
                partner[a] = b as u32;
                partner[b] = a as u32;
                go(partner, out);
                partner[a] = u32::MAX;
                partner[b] = u32::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if points % 2 == 0 {
        go(&mut vec![u32::MAX; points], &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub samples: u64,
    pub cells: usize,
}

/// Pearson test of `counts` against the uniform distribution.
pub fn chi_square_uniform(counts: &[u64]) -> ChiSquare {
    let samples: u64 = counts.iter().sum();
    let cells = counts.len();
    if cells < 2 || samples == 0 {
        return ChiSquare { statistic: 0.0, dof: 0, p_value: 1.0, samples, cells };
    }
    let expected = samples as f64 / cells as f64;
    let statistic = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dof = cells - 1;
    let p_value = ChiSquared::new(dof as f64).expect("positive dof").sf(statistic);
    ChiSquare { statistic, dof, p_value, samples, cells }
}

fn index_matchings(points: usize) -> HashMap<Vec<u32>, usize> {
    enumerate_matchings(points).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Draws `samples` pairings of the `d`-regular sequence on `n` buckets and
/// tests the frequencies of the enumerated matchings.
pub fn matching_uniformity(n: usize, d: u32, samples: u64, seed: u64) -> Result<ChiSquare> {
    let seq = DegreeSequence::regular(n, d)?;
    if seq.total_points() > 12 {
        return Err(Error::TooLarge { n: seq.total_points(), limit: 12 });
    }
    let index = index_matchings(seq.total_points());
    let mut counts = vec![0u64; index.len()];
    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let c = sample_configuration_with(&seq, &mut rng)?;
        counts[index[c.partners()]] += 1;
    }
    Ok(chi_square_uniform(&counts))
}

/// Frequency of one fixed pair among `samples` pairings of `2m` points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairFrequency {
    pub samples: u64,
    pub hits: u64,
    pub expected: f64,
    /// Deviation from the expected frequency in standard deviations.
    pub z: f64,
}

/// Samples pairings of `2m` points (as `m` buckets of degree 2) and counts
/// how often points 0 and 2 are matched.
pub fn pair_frequency(m: usize, samples: u64, seed: u64) -> Result<PairFrequency> {
    let seq = DegreeSequence::regular(m, 2)?;
    let mut rng = rng_from_seed(seed);
    let mut hits = 0;
    for _ in 0..samples {
        if sample_configuration_with(&seq, &mut rng)?.partners()[0] == 2 {
            hits += 1;
        }
    }
    let expected = 1.0 / (2 * m - 1) as f64;
    let sd = (expected * (1.0 - expected) / samples as f64).sqrt();
    Ok(PairFrequency { samples, hits, expected, z: (hits as f64 / samples as f64 - expected) / sd })
}

/// Outcomes that produced one surviving degree sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalGroup {
    pub degrees: Vec<u32>,
    pub samples: u64,
    pub matchings: usize,
    /// `None` when the expected count per matching is below 5.
    pub test: Option<ChiSquare>,
}

/// Percolates `samples` pairings of the `d`-regular sequence on `n`
/// buckets with deletion probability `p`, groups the surviving pairings by
/// degree sequence and tests each group against the uniform distribution
/// over its matchings. Groups are ordered by degree sequence.
pub fn conditional_uniformity(n: usize, d: u32, p: f64, samples: u64, seed: u64) -> Result<Vec<ConditionalGroup>> {
    let seq = DegreeSequence::regular(n, d)?;
    if seq.total_points() > 12 {
        return Err(Error::TooLarge { n: seq.total_points(), limit: 12 });
    }
    let mut rng = rng_from_seed(seed);
    let mut groups: BTreeMap<Vec<u32>, HashMap<Vec<u32>, u64>> = BTreeMap::new();
    for _ in 0..samples {
        let c = sample_configuration_with(&seq, &mut rng)?;
        let deleted = bernoulli_subset(n, p, &mut rng);
        let out = apply_deletion(&c, &deleted)?;
        let degrees = out.survivor.degree_sequence().degrees().to_vec();
        *groups.entry(degrees).or_default().entry(out.survivor.partners().to_vec()).or_default() += 1;
    }
    let mut result = Vec::new();
    for (degrees, seen) in groups {
        let points: usize = degrees.iter().map(|&x| x as usize).sum();
        let all = enumerate_matchings(points);
        let counts: Vec<u64> = all.iter().map(|m| seen.get(m).copied().unwrap_or(0)).collect();
        debug_assert_eq!(counts.iter().sum::<u64>(), seen.values().sum::<u64>());
        let total: u64 = counts.iter().sum();
        let test = (total as f64 / all.len() as f64 >= 5.0).then(|| chi_square_uniform(&counts));
        result.push(ConditionalGroup { degrees, samples: total, matchings: all.len(), test });
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub matching: ChiSquare,
    pub conditional: Vec<ConditionalGroup>,
}

/// The matching test (n = 3, d = 2) and the conditional test (n = 4,
/// d = 2, p = 0.5), each with 10^5 samples.
pub fn uniformity_suite(seed: u64) -> Result<UniformityReport> {
    Ok(UniformityReport {
        matching: matching_uniformity(3, 2, 100_000, seed)?,
        conditional: conditional_uniformity(4, 2, 0.5, 100_000, seed.wrapping_add(1))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_counts() {
        let counts: Vec<usize> = (0..=5).map(|m| enumerate_matchings(2 * m).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105, 945]);
        assert!(enumerate_matchings(3).is_empty());
    }

    #[test]
    fn chi_square_of_perfect_fit() {
        let c = chi_square_uniform(&[10, 10, 10]);
        assert_eq!(c.statistic, 0.0);
        assert!((c.p_value - 1.0).abs() < 1e-12);
        let skewed = chi_square_uniform(&[100, 0, 0]);
        assert!(skewed.p_value < 1e-10);
    }

    #[test]
    fn small_groups_are_not_tested() {
        let groups = conditional_uniformity(4, 2, 0.5, 200, 1).unwrap();
        assert!(groups.iter().any(|g| g.test.is_none()));
        let unique = groups.iter().find(|g| g.matchings == 1).unwrap();
        assert!(unique.test.as_ref().map_or(true, |t| t.p_value == 1.0));
    }
}
