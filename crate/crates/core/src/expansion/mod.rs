//! Vertex and edge expansion: exact values on small graphs, bounds on
//! large ones.
//!
//! A graph on `n` vertices is a β-expander when every vertex set `S` with
//! `|S| <= n/2` has at least `β|S|` neighbours outside `S`. The edge
//! version asks for `e(S) >= γ d(S)` whenever `d(S) <= |E|`. Loops never
//! count as neighbours, and parallel edges count once for β and with
//! multiplicity for γ.

mod exact;
mod spectral;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use self::exact::{
    exact_edge_expansion, exact_vertex_expansion, ExactExpansion, Ratio, DEFAULT_EXHAUSTIVE_LIMIT,
};
pub use self::spectral::{spectral_lower_bound, SpectralBound, EIGEN_TOLERANCE, MAX_ITERATIONS};

use crate::decomposition::{bushes_with_core, two_core, Bush};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rng::rng_from_seed;

/// `2/(k-1)` for a run of `k >= 2` degree-2 vertices, provided the `k-1`
/// vertices it is computed from fit in a set of at most `n/2` vertices.
pub fn path_upper_bound(k: usize, n: usize) -> Option<f64> {
    if k < 2 || k - 1 > n / 2 {
        return None;
    }
    Some(2.0 / (k - 1) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperSource {
    /// Consecutive degree-2 core vertices plus the bushes hanging from them.
    Deg2Run,
    /// The best breadth-first ball among a few sampled centres.
    SampledSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: f64,
    pub source: UpperSource,
    /// Ascending 0-based labels of a set whose ratio is at most `value`.
    pub witness: Vec<u32>,
}

/// Upper bound from the longest degree-2 run of the 2-core of `g`.
///
/// The witness is the first `k-1` run vertices together with every bush
/// rooted at them; its only outside neighbours are the two path vertices
/// flanking it, so its ratio is at most `2/(k-1)`. Returns `None` if the
/// run is shorter than 2 or the witness exceeds `n/2` vertices.
pub fn run_upper_bound(g: &Multigraph) -> Option<UpperBound> {
    let core = two_core(g);
    let kernel = crate::decomposition::kernel(&core.graph).ok()?;
    let run = kernel.longest_run()?;
    let value = path_upper_bound(run.length, g.vertex_count())?;
    let bushes = bushes_with_core(g, &core.in_core);
    let mut rooted: Vec<Option<&Bush>> = vec![None; g.vertex_count()];
    for b in &bushes {
        if let Some(r) = b.root {
            rooted[r as usize] = Some(b);
        }
    }
    let mut witness = Vec::new();
    for &c in &run.vertices[..run.length - 1] {
        let v = core.vertex_map[c as usize];
        match rooted[v as usize] {
            Some(b) => witness.extend_from_slice(&b.vertices),
            None => witness.push(v),
        }
    }
    witness.sort_unstable();
    (witness.len() <= g.vertex_count() / 2).then_some(UpperBound {
        value,
        source: UpperSource::Deg2Run,
        witness,
    })
}

/// `|N(S) \ S|` for an explicit vertex set.
pub fn outer_boundary(g: &Multigraph, set: &[u32]) -> usize {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[v as usize] = true;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    for &v in set {
        for u in g.neighbors(v as usize) {
            if !inside[u] && !seen[u] {
                seen[u] = true;
                count += 1;
            }
        }
    }
    count
}

/// Grows breadth-first balls around `samples` random centres, one vertex
/// at a time, and keeps the smallest boundary ratio seen at size `<= n/2`.
pub fn sampled_upper_bound(g: &Multigraph, samples: usize, seed: u64) -> Option<UpperBound> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let half = n / 2;
    let mut rng = rng_from_seed(seed);
    let mut best: Option<(Ratio, u32, usize)> = None;
    let mut inside = vec![false; n];
    let mut boundary_hits = vec![0u32; n];
    for _ in 0..samples {
        let centre = rng.random_range(0..n as u32);
        let order = bfs_order(g, centre as usize);
        inside.iter_mut().for_each(|x| *x = false);
        boundary_hits.iter_mut().for_each(|x| *x = 0);
        let mut boundary = 0usize;
        for (size, &v) in order.iter().take(half).enumerate() {
            let v = v as usize;
            inside[v] = true;
            if boundary_hits[v] > 0 {
                boundary -= 1;
            }
            for u in g.neighbors(v) {
                if !inside[u] {
                    if boundary_hits[u] == 0 {
                        boundary += 1;
                    }
                    boundary_hits[u] += 1;
                }
            }
            let ratio = Ratio::new(boundary as u64, size as u64 + 1);
            if best.map_or(true, |(b, _, _)| ratio < b) {
                best = Some((ratio, centre, size + 1));
            }
        }
    }
    best.map(|(ratio, centre, size)| {
        let mut witness: Vec<u32> = bfs_order(g, centre as usize).into_iter().take(size).collect();
        witness.sort_unstable();
        UpperBound { value: ratio.value(), source: UpperSource::SampledSet, witness }
    })
}

/// Vertices in breadth-first order from `source`, followed by the
/// unreachable ones in label order.
fn bfs_order(g: &Multigraph, source: usize) -> Vec<u32> {
    let dist = g.bfs(source);
    let mut order: Vec<u32> = (0..g.vertex_count() as u32).collect();
    order.sort_by_key(|&v| (dist[v as usize], v));
    order
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiameterCheck {
    /// `None` when the graph is disconnected.
    pub diameter: Option<u32>,
    /// `2 log_{1+β}(n/2) + 2`.
    pub bound: f64,
    pub pass: bool,
    /// `log_{1+β}(n/2)`, reported but not enforced.
    pub strict_bound: f64,
    pub strict_pass: bool,
}

/// Exact diameter by breadth-first search from every vertex.
pub fn diameter(g: &Multigraph) -> Option<u32> {
    let mut best = 0;
    for v in 0..g.vertex_count() {
        let far = g.bfs(v).into_iter().max().unwrap_or(0);
        if far == u32::MAX {
            return None;
        }
        best = best.max(far);
    }
    Some(best)
}

/// Compares the diameter with the bound implied by vertex expansion `beta`.
///
/// From any vertex the ball of radius `r` has at least `(1+β)^r` vertices
/// until it covers more than half the graph, so two such balls meet after
/// `⌊log_{1+β}(n/2)⌋ + 1` steps each.
pub fn diameter_check(g: &Multigraph, beta: f64) -> Result<DiameterCheck> {
    if !(beta > 0.0) {
        return Err(Error::domain(format!("expansion must be positive, got {beta}")));
    }
    let half = g.vertex_count() as f64 / 2.0;
    let strict_bound = half.ln() / (1.0 + beta).ln();
    let bound = 2.0 * strict_bound + 2.0;
    let diameter = diameter(g);
    let within = |b: f64| diameter.is_some_and(|d| d as f64 <= b + 1e-9);
    Ok(DiameterCheck {
        diameter,
        bound,
        pass: within(bound),
        strict_bound,
        strict_pass: within(strict_bound),
    })
}

/// Outcome of re-adding a set `W` of far-apart vertices to an expander.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReinstatementCheck {
    /// Exact expansion of the graph without `W`.
    pub beta_without: f64,
    /// `min(beta_without, 2)`.
    pub beta_certified: f64,
    /// Exact expansion of the full graph.
    pub beta_with: f64,
    /// `beta_with >= beta_certified / 2`.
    pub halved_expansion_holds: bool,
    /// Smallest number of distinct outside neighbours among `W` vertices.
    pub w_degree: usize,
    /// Every set with `|S - W| < |S ∩ W|` has at least
    /// `w_degree |S ∩ W| - |S - W| >= (w_degree - 1)|S ∩ W|` outside
    /// neighbours.
    pub chain_holds: bool,
    pub pass: bool,
}

/// Checks that re-adding `w` to `g - w` at worst halves the expansion.
///
/// Every two vertices of `w` must be at distance at least 3 in `g`.
pub fn reinstatement_expansion_check(g: &Multigraph, w: &[u32], limit: usize) -> Result<ReinstatementCheck> {
    let n = g.vertex_count();
    let mut in_w = vec![false; n];
    for &x in w {
        if x as usize >= n {
            return Err(Error::domain(format!("vertex {x} is not in 0..{n}")));
        }
        in_w[x as usize] = true;
    }
    for &x in w {
        let dist = g.bfs(x as usize);
        if let Some(&y) = w.iter().find(|&&y| y != x && dist[y as usize] < 3) {
            return Err(Error::domain(format!(
                "reinstated vertices {x} and {y} are at distance {}, need at least 3",
                dist[y as usize]
            )));
        }
    }
    let keep: Vec<bool> = in_w.iter().map(|&b| !b).collect();
    let (without, _) = g.induced(&keep);
    let beta_without = exact_vertex_expansion(&without, limit)?.ratio.value();
    let beta_certified = beta_without.min(2.0);
    let beta_with = exact_vertex_expansion(g, limit)?.ratio.value();

    let nbr = exact::neighbour_masks(g);
    let w_mask = w.iter().fold(0u32, |m, &x| m | 1 << x);
    let w_degree = w.iter().map(|&x| nbr[x as usize].count_ones() as usize).min().unwrap_or(0);
    let mut chain_holds = true;
    let half = (n / 2) as u32;
    for s in 1u32..(1 << n) {
        let size = s.count_ones();
        let in_w_count = (s & w_mask).count_ones() as i64;
        let rest = size as i64 - in_w_count;
        if size > half || rest >= in_w_count {
            continue;
        }
        let reach = exact::mask_to_vec(s).iter().fold(0u32, |m, &v| m | nbr[v as usize]);
        let outside = (reach & !s).count_ones() as i64;
        let floor = w_degree as i64 * in_w_count - rest;
        if outside < floor || floor < (w_degree as i64 - 1) * in_w_count {
            chain_holds = false;
            break;
        }
    }
    let halved_expansion_holds = beta_with + 1e-12 >= beta_certified / 2.0;
    Ok(ReinstatementCheck {
        beta_without,
        beta_certified,
        beta_with,
        halved_expansion_holds,
        w_degree,
        chain_holds,
        pass: halved_expansion_holds && chain_holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionMode {
    Exact,
    Bounds,
}

/// Serializable expansion summary. Witness labels are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    pub n: usize,
    pub max_degree: usize,
    pub exact_beta: Option<f64>,
    pub witness: Option<Vec<u32>>,
    pub exact_gamma: Option<f64>,
    pub gamma_witness: Option<Vec<u32>>,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub upper_source: Option<UpperSource>,
    pub lambda2: Option<f64>,
    pub connected: bool,
    pub diameter: Option<u32>,
    pub diameter_bound: Option<f64>,
    pub bound_pass: Option<bool>,
}

/// Number of ball centres tried by the sampled upper bound.
const BALL_SAMPLES: usize = 8;

/// Builds a certificate for `g`. Exact mode adds the exhaustive values and
/// the diameter check and needs `n <= limit`.
pub fn certify(g: &Multigraph, mode: ExpansionMode, limit: usize, seed: u64) -> Result<ExpansionCertificate> {
    let n = g.vertex_count();
    let spectral = spectral_lower_bound(g, seed);
    let upper = [run_upper_bound(g), sampled_upper_bound(g, BALL_SAMPLES, seed)]
        .into_iter()
        .flatten()
        .min_by(|a, b| a.value.total_cmp(&b.value));
    let mut cert = ExpansionCertificate {
        n,
        max_degree: g.max_degree(),
        lower_bound: Some(spectral.beta_lower),
        lambda2: Some(spectral.lambda2),
        connected: spectral.connected,
        upper_bound: upper.as_ref().map(|u| u.value),
        upper_source: upper.as_ref().map(|u| u.source),
        ..Default::default()
    };
    if mode == ExpansionMode::Exact {
        let beta = exact_vertex_expansion(g, limit)?;
        let gamma = exact_edge_expansion(g, limit)?;
        let one = |vs: &[u32]| vs.iter().map(|v| v + 1).collect::<Vec<_>>();
        cert.exact_beta = Some(beta.ratio.value());
        cert.witness = Some(one(&beta.witness));
        cert.exact_gamma = Some(gamma.ratio.value());
        cert.gamma_witness = Some(one(&gamma.witness));
        if beta.ratio.num > 0 {
            let check = diameter_check(g, beta.ratio.value())?;
            cert.diameter = check.diameter;
            cert.diameter_bound = Some(check.bound);
            cert.bound_pass = Some(check.pass);
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn path_bound_values() {
        assert_eq!(path_upper_bound(5, 100), Some(0.5));
        assert_eq!(path_upper_bound(3, 100), Some(1.0));
        assert_eq!(path_upper_bound(1, 100), None);
        assert_eq!(path_upper_bound(9, 10), None);
    }

    #[test]
    fn run_bound_on_theta() {
        // paths with 5 and 1 internal vertices between two branch vertices
        let g = theta(&[6, 2, 1]);
        let ub = run_upper_bound(&g).unwrap();
        assert_eq!(ub.value, 0.5);
        assert_eq!(ub.witness.len(), 4);
        assert_eq!(outer_boundary(&g, &ub.witness), 2);
        let exact = exact_vertex_expansion(&g, 20).unwrap().ratio.value();
        assert!(exact <= ub.value);
    }

    #[test]
    fn run_bound_absorbs_bushes() {
        // long cycle through branch vertex 0, with a pendant on run vertex 2
        let mut edges: Vec<(u32, u32)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.extend([(0, 8), (8, 9), (9, 0), (2, 10)]);
        // padded with isolated vertices so the witness fits in half
        let g = Multigraph::from_edges(16, edges).unwrap();
        let ub = run_upper_bound(&g).unwrap();
        assert!(ub.witness.contains(&10));
        assert_eq!(outer_boundary(&g, &ub.witness), 2);
    }

    #[test]
    fn sampled_bound_is_valid() {
        let g = cycle(12);
        let ub = sampled_upper_bound(&g, 4, 7).unwrap();
        assert!(ub.witness.len() <= 6);
        let ratio = outer_boundary(&g, &ub.witness) as f64 / ub.witness.len() as f64;
        assert!((ratio - ub.value).abs() < 1e-12);
        assert!((ub.value - 2.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn diameters() {
        let c = diameter_check(&complete(4), 1.0).unwrap();
        assert_eq!(c.diameter, Some(1));
        assert!((c.bound - 4.0).abs() < 1e-12);
        assert!(c.pass);

        let c = diameter_check(&cycle(6), 2.0 / 3.0).unwrap();
        assert_eq!(c.diameter, Some(3));
        assert!((c.bound - (2.0 * 3f64.ln() / (5.0f64 / 3.0).ln() + 2.0)).abs() < 1e-12);
        assert!(c.pass);

        let p = path(10);
        let beta = exact_vertex_expansion(&p, 20).unwrap().ratio;
        assert_eq!(beta, Ratio::new(1, 5));
        let c = diameter_check(&p, beta.value()).unwrap();
        assert_eq!(c.diameter, Some(9));
        assert!(c.pass);

        let g = Multigraph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(diameter_check(&g, 0.5).unwrap().diameter, None);
        assert!(diameter_check(&g, 0.0).is_err());
    }

    #[test]
    fn reinstating_nothing() {
        let r = reinstatement_expansion_check(&complete(5), &[], 20).unwrap();
        assert_eq!(r.beta_without, r.beta_with);
        assert!(r.pass);
    }

    #[test]
    fn reinstating_into_c8() {
        // C_8 with vertex 8 spliced into the edge 7-0 gives C_9
        let mut edges: Vec<(u32, u32)> = (0..7).map(|i| (i, i + 1)).collect();
        edges.extend([(7, 8), (8, 0)]);
        let g = Multigraph::from_edges(9, edges).unwrap();
        let r = reinstatement_expansion_check(&g, &[8], 20).unwrap();
        // without vertex 8 the graph is the path P_8
        assert!((r.beta_without - 0.25).abs() < 1e-12);
        assert!((r.beta_with - 0.5).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn reinstated_vertices_too_close() {
        let err = reinstatement_expansion_check(&cycle(8), &[0, 2], 20).unwrap_err();
        assert!(err.to_string().contains("distance 2"));
    }

    #[test]
    fn certificate_fields() {
        let cert = certify(&complete(4), ExpansionMode::Exact, 20, 1).unwrap();
        assert_eq!(cert.exact_beta, Some(1.0));
        assert_eq!(cert.witness, Some(vec![1, 2]));
        assert!((cert.exact_gamma.unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(cert.lower_bound.unwrap() <= 1.0);
        assert_eq!(cert.diameter, Some(1));
        assert_eq!(cert.bound_pass, Some(true));
        let json = serde_json::to_string(&cert).unwrap();
        for key in ["exact_beta", "witness", "lower_bound", "upper_bound", "lambda2", "diameter", "bound_pass"] {
            assert!(json.contains(key), "{key}");
        }
    }
}
