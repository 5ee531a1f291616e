//! The configuration (pairing) model.
//!
//! A configuration has `n` buckets; bucket `j` holds `d_j` points, and the
//! points are joined by a perfect matching. Shrinking every bucket to a
//! vertex turns the matching into a multigraph that may carry loops and
//! parallel edges. Labels are 0-based in memory; the text formats in
//! [`crate::io`] shift them to 1-based.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rng::{rng_from_seed, SeededRng};

/// Attempts allowed before [`sample_simple`] gives up.
pub const DEFAULT_RETRY_CAP: u32 = 10_000;

const UNMATCHED: u32 = u32::MAX;

/// Per-bucket point counts with an even total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    offsets: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(degrees.len() + 1);
        let mut total = 0usize;
        offsets.push(0);
        for &d in &degrees {
            total += d as usize;
            offsets.push(total);
        }
        if total % 2 != 0 {
            return Err(Error::InvalidDegreeSequence(format!(
                "point total {total} is odd"
            )));
        }
        if total > u32::MAX as usize - 1 {
            return Err(Error::InvalidDegreeSequence(format!(
                "point total {total} does not fit 32-bit point labels"
            )));
        }
        Ok(DegreeSequence { degrees, offsets })
    }

    pub fn regular(n: usize, d: u32) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn total_points(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Number of pairs `m`, half the point total.
    pub fn pair_count(&self) -> usize {
        self.total_points() / 2
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Global index of the first point of `bucket`.
    pub fn first_point(&self, bucket: usize) -> usize {
        self.offsets[bucket]
    }

    pub fn global_point(&self, point: Point) -> usize {
        debug_assert!(point.index < self.degrees[point.bucket as usize]);
        self.offsets[point.bucket as usize] + point.index as usize
    }

    /// Bucket that owns each global point, in point order.
    fn owners(&self) -> Vec<u32> {
        let mut owner = Vec::with_capacity(self.total_points());
        for (b, &d) in self.degrees.iter().enumerate() {
            owner.extend(std::iter::repeat_n(b as u32, d as usize));
        }
        owner
    }
}

/// A point, addressed by bucket and its index within the bucket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub bucket: u32,
    pub index: u32,
}

impl Point {
    pub fn new(bucket: u32, index: u32) -> Self {
        Point { bucket, index }
    }
}

/// A degree sequence together with a perfect matching of its points.
///
/// The matching is stored as an involution on global point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    seq: DegreeSequence,
    owner: Vec<u32>,
    partner: Vec<u32>,
}

impl Configuration {
    /// Builds a configuration from explicit pairs, checking that every
    /// point is covered exactly once.
    pub fn from_pairs(seq: DegreeSequence, pairs: &[(Point, Point)]) -> Result<Self> {
        let total = seq.total_points();
        if pairs.len() * 2 != total {
            return Err(Error::domain(format!(
                "{} pairs cannot match {} points",
                pairs.len(),
                total
            )));
        }
        let mut partner = vec![UNMATCHED; total];
        for &(a, b) in pairs {
            for p in [a, b] {
                if p.bucket as usize >= seq.len() || p.index >= seq.degrees[p.bucket as usize] {
                    return Err(Error::domain(format!(
                        "point ({}, {}) is outside the degree sequence",
                        p.bucket, p.index
                    )));
                }
            }
            let (ga, gb) = (seq.global_point(a), seq.global_point(b));
            if ga == gb || partner[ga] != UNMATCHED || partner[gb] != UNMATCHED {
                return Err(Error::domain(format!(
                    "pair ({}, {})-({}, {}) reuses a point",
                    a.bucket, a.index, b.bucket, b.index
                )));
            }
            partner[ga] = gb as u32;
            partner[gb] = ga as u32;
        }
        Ok(Self::from_partner_unchecked(seq, partner))
    }

    /// `partner` must already be a fixed-point-free involution.
    pub(crate) fn from_partner_unchecked(seq: DegreeSequence, partner: Vec<u32>) -> Self {
        debug_assert_eq!(partner.len(), seq.total_points());
        debug_assert!(partner
            .iter()
            .enumerate()
            .all(|(i, &j)| j as usize != i && partner[j as usize] as usize == i));
        let owner = seq.owners();
        Configuration { seq, owner, partner }
    }

    pub fn degree_sequence(&self) -> &DegreeSequence {
        &self.seq
    }

    pub fn bucket_count(&self) -> usize {
        self.seq.len()
    }

    pub fn pair_count(&self) -> usize {
        self.partner.len() / 2
    }

    /// Partner of each global point.
    pub fn partners(&self) -> &[u32] {
        &self.partner
    }

    /// Bucket owning each global point.
    pub fn owners(&self) -> &[u32] {
        &self.owner
    }

    pub fn point(&self, global: usize) -> Point {
        let bucket = self.owner[global];
        Point::new(bucket, (global - self.seq.first_point(bucket as usize)) as u32)
    }

    pub fn partner_of(&self, p: Point) -> Point {
        self.point(self.partner[self.seq.global_point(p)] as usize)
    }

    /// Pairs in order of their lower global point; each pair is listed once
    /// with its lower point first.
    pub fn pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j as usize)
            .map(|(i, &j)| (self.point(i), self.point(j as usize)))
    }
}

/// Samples a uniformly random perfect matching of the points of `seq`.
///
/// The point total must be positive. The result is a deterministic function
/// of `seq` and `seed`.
pub fn sample_configuration(seq: &DegreeSequence, seed: u64) -> Result<Configuration> {
    sample_configuration_with(seq, &mut rng_from_seed(seed))
}

pub fn sample_configuration_with(seq: &DegreeSequence, rng: &mut SeededRng) -> Result<Configuration> {
    check_sampleable(seq)?;
    let mut pool = MatchingPool::new(seq.total_points());
    let partner = pool.fill(rng, |_, _| true).expect("unconstrained fill cannot reject");
    Ok(Configuration::from_partner_unchecked(seq.clone(), partner))
}

fn check_sampleable(seq: &DegreeSequence) -> Result<()> {
    if seq.total_points() == 0 {
        return Err(Error::InvalidDegreeSequence(
            "point total must be positive".into(),
        ));
    }
    Ok(())
}

/// Unmatched-point pool supporting O(1) removal by swapping with the tail.
struct MatchingPool {
    free: Vec<u32>,
    slot: Vec<u32>,
}

impl MatchingPool {
    fn new(total: usize) -> Self {
        MatchingPool {
            free: (0..total as u32).collect(),
            slot: (0..total as u32).collect(),
        }
    }

    fn remove(&mut self, point: u32) {
        let at = self.slot[point as usize] as usize;
        let last = *self.free.last().expect("pool is not empty");
        self.free[at] = last;
        self.slot[last as usize] = at as u32;
        self.free.pop();
    }

    /// Pairs the lowest unmatched point with a uniform other unmatched point
    /// until all points are matched. `accept(a, b)` may veto a pair, which
    /// abandons the whole matching and returns `None`.
    fn fill(
        &mut self,
        rng: &mut SeededRng,
        mut accept: impl FnMut(usize, usize) -> bool,
    ) -> Option<Vec<u32>> {
        let total = self.free.len();
        let mut partner = vec![UNMATCHED; total];
        for a in 0..total {
            if partner[a] != UNMATCHED {
                continue;
            }
            self.remove(a as u32);
            let b = self.free[rng.random_range(0..self.free.len())];
            self.remove(b);
            if !accept(a, b as usize) {
                return None;
            }
            partner[a] = b;
            partner[b as usize] = a as u32;
        }
        Some(partner)
    }
}

/// A simple configuration together with its projection and the number of
/// attempts it took to find.
#[derive(Clone, Debug)]
pub struct SimpleSample {
    pub configuration: Configuration,
    pub graph: Multigraph,
    pub attempts: u32,
}

/// Rejection-samples configurations of `seq` until the projection is simple.
///
/// A matching is abandoned as soon as it creates a loop or a repeated edge,
/// which accepts exactly the same outcomes as completing it and testing
/// afterwards, so accepted samples are uniform over simple configurations.
pub fn sample_simple(seq: &DegreeSequence, seed: u64, retry_cap: u32) -> Result<SimpleSample> {
    sample_simple_with(seq, &mut rng_from_seed(seed), retry_cap)
}

pub fn sample_simple_with(
    seq: &DegreeSequence,
    rng: &mut SeededRng,
    retry_cap: u32,
) -> Result<SimpleSample> {
    check_sampleable(seq)?;
    let owner = seq.owners();
    let total = seq.total_points();
    // neighbour slots laid out like the points themselves
    let mut nbr = vec![0u32; total];
    let mut filled = vec![0u32; seq.len()];
    for attempt in 1..=retry_cap {
        filled.iter_mut().for_each(|f| *f = 0);
        let mut pool = MatchingPool::new(total);
        let accepted = pool.fill(rng, |a, b| {
            let (u, v) = (owner[a], owner[b]);
            if u == v {
                return false;
            }
            let start = seq.first_point(u as usize);
            if nbr[start..start + filled[u as usize] as usize].contains(&v) {
                return false;
            }
            nbr[start + filled[u as usize] as usize] = v;
            filled[u as usize] += 1;
            let start = seq.first_point(v as usize);
            nbr[start + filled[v as usize] as usize] = u;
            filled[v as usize] += 1;
            true
        });
        if let Some(partner) = accepted {
            let configuration = Configuration::from_partner_unchecked(seq.clone(), partner);
            let graph = project(&configuration);
            return Ok(SimpleSample { configuration, graph, attempts: attempt });
        }
    }
    Err(Error::SamplingFailure { attempts: retry_cap })
}

/// Uniform simple `d`-regular graph on `n` vertices, via [`sample_simple`].
pub fn sample_simple_regular(n: usize, d: u32, seed: u64) -> Result<SimpleSample> {
    sample_simple_regular_capped(n, d, seed, DEFAULT_RETRY_CAP)
}

pub fn sample_simple_regular_capped(n: usize, d: u32, seed: u64, retry_cap: u32) -> Result<SimpleSample> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidDegreeSequence(format!(
            "need n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    sample_simple(&DegreeSequence::regular(n, d)?, seed, retry_cap)
}

/// No loops and no repeated edges.
pub fn is_simple(g: &Multigraph) -> bool {
    g.is_simple()
}

/// Shrinks every bucket to a vertex. Vertex `v`'s adjacency lists its
/// points in order, so a loop occupies two slots.
pub fn project(config: &Configuration) -> Multigraph {
    let seq = config.degree_sequence();
    let mut edge_id = vec![0u32; config.partner.len()];
    let mut edges = Vec::with_capacity(config.pair_count());
    for (a, &b) in config.partner.iter().enumerate() {
        if a < b as usize {
            edge_id[a] = edges.len() as u32;
            edge_id[b as usize] = edges.len() as u32;
            edges.push((config.owner[a], config.owner[b as usize]));
        }
    }
    let adj = config
        .partner
        .iter()
        .zip(&edge_id)
        .map(|(&b, &e)| (config.owner[b as usize], e))
        .collect();
    Multigraph::from_parts(seq.len(), edges, seq.offsets.clone(), adj)
}

/// Probability that a uniform matching on `2m` points contains `k` given
/// disjoint pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairProbability {
    /// `Π_{i<k} 1/(2m-1-2i)`.
    pub exact: f64,
    /// `(2m)^-k`.
    pub asymptotic: f64,
}

pub fn pair_probability(m: u64, k: u64) -> Result<PairProbability> {
    if k > m {
        return Err(Error::domain(format!("cannot fix {k} disjoint pairs among {m}")));
    }
    let exact = (0..k).fold(1.0, |acc, i| acc / (2 * m - 1 - 2 * i) as f64);
    let asymptotic = (2.0 * m as f64).powi(-(k as i32));
    Ok(PairProbability { exact, asymptotic })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_total_rejected() {
        let err = DegreeSequence::regular(3, 3).unwrap_err();
        assert!(matches!(err, Error::InvalidDegreeSequence(_)));
    }

    #[test]
    fn two_points_have_one_matching() {
        let seq = DegreeSequence::regular(1, 2).unwrap();
        for seed in 0..5 {
            let c = sample_configuration(&seq, seed).unwrap();
            let pairs: Vec<_> = c.pairs().collect();
            assert_eq!(pairs, vec![(Point::new(0, 0), Point::new(0, 1))]);
        }
    }

    #[test]
    fn empty_sequence_cannot_be_sampled() {
        let seq = DegreeSequence::new(vec![0, 0]).unwrap();
        assert!(sample_configuration(&seq, 1).is_err());
    }

    #[test]
    fn same_seed_same_configuration() {
        let seq = DegreeSequence::regular(50, 4).unwrap();
        let a = sample_configuration(&seq, 77).unwrap();
        let b = sample_configuration(&seq, 77).unwrap();
        let c = sample_configuration(&seq, 78).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn projection_of_loop() {
        let seq = DegreeSequence::regular(1, 2).unwrap();
        let c = sample_configuration(&seq, 3).unwrap();
        let g = project(&c);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges(), &[(0, 0)]);
        assert_eq!(g.degree(0), 2);
        assert!(!g.is_simple());
    }

    #[test]
    fn projection_of_double_edge() {
        let seq = DegreeSequence::regular(2, 2).unwrap();
        let c = Configuration::from_pairs(
            seq,
            &[
                (Point::new(0, 0), Point::new(1, 0)),
                (Point::new(0, 1), Point::new(1, 1)),
            ],
        )
        .unwrap();
        let g = project(&c);
        assert_eq!(g.edges(), &[(0, 1), (0, 1)]);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 2);
        assert!(!g.is_simple());
    }

    #[test]
    fn from_pairs_rejects_reuse() {
        let seq = DegreeSequence::regular(2, 2).unwrap();
        let p = Point::new(0, 0);
        let err = Configuration::from_pairs(
            seq,
            &[(p, Point::new(1, 0)), (p, Point::new(1, 1))],
        );
        assert!(err.is_err());
    }

    #[test]
    fn k4_is_the_only_simple_cubic_graph_on_four_vertices() {
        for seed in 0..20 {
            let s = sample_simple_regular(4, 3, seed).unwrap();
            assert!(s.graph.is_simple());
            let mut edges: Vec<_> = s
                .graph
                .edges()
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        }
    }

    #[test]
    fn two_vertex_cubic_graph_fails() {
        let err = sample_simple_regular_capped(2, 3, 9, 200).unwrap_err();
        assert!(matches!(err, Error::SamplingFailure { attempts: 200 }));
    }

    #[test]
    fn pair_probability_values() {
        // 4 points have 3 matchings; a fixed pair lies in exactly one
        let p = pair_probability(2, 1).unwrap();
        assert!((p.exact - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.asymptotic - 0.25).abs() < 1e-15);
        // two disjoint pairs on 4 points pin the matching
        assert!((pair_probability(2, 2).unwrap().exact - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(pair_probability(7, 0).unwrap().exact, 1.0);
        assert!(pair_probability(2, 3).is_err());
    }
}
