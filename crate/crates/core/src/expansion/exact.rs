use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Largest graph the exhaustive searches accept by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

/// Hard ceiling: subset masks are `u32` and the tables hold `2^n` entries.
const MAX_EXHAUSTIVE: usize = 26;

/// Non-negative rational compared exactly.
#[derive(Clone, Copy, Debug, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "ratio with zero denominator");
        Ratio { num, den }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimum expansion ratio and the set attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactExpansion {
    pub ratio: Ratio,
    /// Ascending vertex labels; lexicographically least among minimizers.
    pub witness: Vec<u32>,
}

pub(crate) fn check_size(g: &Multigraph, limit: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > limit.min(MAX_EXHAUSTIVE) {
        return Err(Error::TooLarge { n, limit: limit.min(MAX_EXHAUSTIVE) });
    }
    if n < 2 {
        return Err(Error::domain(format!("expansion needs at least 2 vertices, got {n}")));
    }
    Ok(())
}

pub(crate) fn mask_to_vec(mask: u32) -> Vec<u32> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Neighbour bitmask of every vertex, loops and multiplicity dropped.
pub(crate) fn neighbour_masks(g: &Multigraph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).filter(|&u| u != v).fold(0u32, |m, u| m | 1 << u))
        .collect()
}

/// Keeps the running minimum, breaking ties by lexicographic witness order.
struct Best {
    ratio: Option<Ratio>,
    mask: u32,
}

impl Best {
    fn offer(&mut self, ratio: Ratio, mask: u32) {
        let better = match self.ratio {
            None => true,
            Some(cur) => match ratio.cmp(&cur) {
                Ordering::Less => true,
                Ordering::Equal => mask_to_vec(mask) < mask_to_vec(self.mask),
                Ordering::Greater => false,
            },
        };
        if better {
            self.ratio = Some(ratio);
            self.mask = mask;
        }
    }

    fn finish(self) -> ExactExpansion {
        ExactExpansion {
            ratio: self.ratio.expect("at least one candidate set"),
            witness: mask_to_vec(self.mask),
        }
    }
}

/// Vertex expansion `min |N(S) \ S| / |S|` over non-empty `S` with
/// `|S| <= n/2`, by exhaustive search.
///
/// Neighbourhoods of all subsets are built incrementally from the subset
/// with its lowest vertex removed, so each subset costs O(1).
pub fn exact_vertex_expansion(g: &Multigraph, limit: usize) -> Result<ExactExpansion> {
    check_size(g, limit)?;
    let n = g.vertex_count();
    let half = (n / 2) as u32;
    let nbr = neighbour_masks(g);
    let mut reach = vec![0u32; 1 << n];
    let mut best = Best { ratio: None, mask: 0 };
    for mask in 1u32..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        reach[mask as usize] = reach[rest as usize] | nbr[low];
        let size = mask.count_ones();
        if size > half {
            continue;
        }
        let outside = (reach[mask as usize] & !mask).count_ones();
        best.offer(Ratio::new(outside as u64, size as u64), mask);
    }
    Ok(best.finish())
}

/// Edge expansion `min e(S) / d(S)` over non-empty `S` with
/// `d(S) <= |E|`, where `e(S)` counts edges leaving `S` with multiplicity
/// and `d(S)` is the degree sum. A set with `d(S) = 0` counts as ratio 0.
pub fn exact_edge_expansion(g: &Multigraph, limit: usize) -> Result<ExactExpansion> {
    check_size(g, limit)?;
    let n = g.vertex_count();
    let m = g.edge_count() as u64;
    // mult[v][u]: edges between v and u (loops excluded)
    let mut mult = vec![0u64; n * n];
    let mut loops = vec![0u64; n];
    for &(u, v) in g.edges() {
        if u == v {
            loops[u as usize] += 1;
        } else {
            mult[u as usize * n + v as usize] += 1;
            mult[v as usize * n + u as usize] += 1;
        }
    }
    let deg: Vec<u64> = g.degrees().map(|d| d as u64).collect();
    let mut dsum = vec![0u64; 1 << n];
    let mut internal = vec![0u64; 1 << n];
    let mut best = Best { ratio: None, mask: 0 };
    for mask in 1u32..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        dsum[mask as usize] = dsum[rest as usize] + deg[low];
        let to_rest: u64 = (0..n).filter(|&u| rest >> u & 1 == 1).map(|u| mult[low * n + u]).sum();
        internal[mask as usize] = internal[rest as usize] + to_rest + loops[low];
        let d = dsum[mask as usize];
        if d > m {
            continue;
        }
        let ratio = if d == 0 {
            Ratio::new(0, 1)
        } else {
            Ratio::new(d - 2 * internal[mask as usize], d)
        };
        best.offer(ratio, mask);
    }
    Ok(best.finish())
}
