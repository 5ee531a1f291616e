//! Closed-form predictions for percolated random regular graphs.
//!
//! The asymptotic statements are turned into desk-scale checks with two
//! constants declared here: a prediction counts as "growing" once it reaches
//! [`CONCENTRATION_THRESHOLD`], and as "vanishing" once it drops below
//! [`VANISHING_THRESHOLD`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest `n^(1-alpha)` for which the deletion count is treated as
/// concentrated.
pub const CONCENTRATION_THRESHOLD: f64 = 30.0;

/// A formula value below this counts as `o(1)` at the run's `n`.
pub const VANISHING_THRESHOLD: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub d: u32,
    pub alpha: f64,
    pub eta: f64,
}

impl ModelParams {
    pub fn new(n: usize, d: u32, alpha: f64, eta: f64) -> Result<Self> {
        if d < 3 {
            return Err(Error::domain(format!("degree must be at least 3, got {d}")));
        }
        if !(eta > 0.0) {
            return Err(Error::domain(format!("eta must be positive, got {eta}")));
        }
        if !(alpha >= eta) {
            return Err(Error::domain(format!("alpha {alpha} is below eta {eta}")));
        }
        Ok(ModelParams { n, d, alpha, eta })
    }
}

/// Predicted shape of the survivor, from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Giant expander component plus bounded isolated trees.
    A,
    /// Giant expander component plus isolated vertices only.
    B,
    /// The whole graph is an expander.
    C,
}

impl Regime {
    /// Every conclusion of `other` also holds under `self`.
    pub fn implies(self, other: Regime) -> bool {
        self >= other
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::A => "a",
            Regime::B => "b",
            Regime::C => "c",
        })
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub(crate) fn mu_raw(j: u32, d: u32, n: f64, alpha: f64) -> f64 {
    binomial(d, j) * n.powf(1.0 - (d - j) as f64 * alpha)
}

/// `mu_j = C(d, j) n^(1 - (d - j) alpha)`, the predicted number of survivors
/// that kept exactly `j` of their `d` points.
pub fn mu(j: u32, params: &ModelParams) -> Result<f64> {
    if j > params.d {
        return Err(Error::domain(format!("j = {j} exceeds d = {}", params.d)));
    }
    Ok(mu_raw(j, params.d, params.n as f64, params.alpha))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedDeletions {
    pub value: f64,
    /// Whether `n^(1-alpha)` is large enough to expect concentration.
    pub concentrated: bool,
}

/// `n^(1-alpha)`.
pub fn expected_r(n: usize, alpha: f64) -> ExpectedDeletions {
    let value = (n as f64).powf(1.0 - alpha);
    ExpectedDeletions { value, concentrated: value >= CONCENTRATION_THRESHOLD }
}

/// Least integer strictly greater than `2 / ((d - 2) eta)`.
pub fn bush_bound_k(d: u32, eta: f64) -> Result<u32> {
    if d < 3 {
        return Err(Error::domain(format!("degree must be at least 3, got {d}")));
    }
    if !(eta > 0.0) {
        return Err(Error::domain(format!("eta must be positive, got {eta}")));
    }
    let x = 2.0 / ((d - 2) as f64 * eta);
    // tolerate representation error so that exact integers stay strict
    let floor = (x + 1e-9).floor();
    let k = if (x - floor).abs() <= 1e-9 { floor + 1.0 } else { x.ceil() };
    Ok(k as u32)
}

/// `c` when `eta >= 1/(d-1)`, else `b` when `eta > 1/(2(d-1))`, else `a`.
pub fn regime_classify(d: u32, eta: f64) -> Regime {
    let d1 = (d - 1) as f64;
    // boundaries are compared with a little slack so 1/3 typed as 0.3333.. lands inside
    const EPS: f64 = 1e-12;
    if eta >= 1.0 / d1 - EPS {
        Regime::C
    } else if eta > 1.0 / (2.0 * d1) + EPS {
        Regime::B
    } else {
        Regime::A
    }
}

/// Statistics of a 2-core fed into [`expected_deg2_paths`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreStats {
    /// Vertex count `t`.
    pub t: f64,
    /// Edge (pair) count `m`.
    pub m: f64,
    /// Degree-2 vertex count `N'_2`.
    pub n2: f64,
}

impl CoreStats {
    /// Core statistics implied by the `mu_j`: every survivor of degree at
    /// least 2 is assumed to stay in the core.
    pub fn predicted(params: &ModelParams) -> Self {
        let mut t = 0.0;
        let mut points = 0.0;
        for j in 2..=params.d {
            let m = mu_raw(j, params.d, params.n as f64, params.alpha);
            t += m;
            points += j as f64 * m;
        }
        CoreStats { t, m: points / 2.0, n2: mu_raw(2, params.d, params.n as f64, params.alpha) }
    }
}

/// Order-of-magnitude predictor for the number of degree-2 runs of length
/// at least `k`: `(t-k)^2/(2m) * ((N'_2-k)/(2m))^(k-1)`, with the unknown
/// leading constant set to 1.
pub fn expected_deg2_paths(core: &CoreStats, k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    let k_f = k as f64;
    if core.n2 <= k_f || core.m <= 0.0 {
        return Ok(0.0);
    }
    let two_m = 2.0 * core.m;
    Ok((core.t - k_f).powi(2) / two_m * ((core.n2 - k_f) / two_m).powi(k as i32 - 1))
}

/// `n^(1 - 2(d-1) alpha)`, the decay rate of isolated trees with two or
/// more leaves.
pub fn isolated_tree_decay(params: &ModelParams) -> f64 {
    (params.n as f64).powf(1.0 - 2.0 * (params.d - 1) as f64 * params.alpha)
}

/// `n^((d-2)/(2d-2))`, the cap on isolated vertices in regime b.
pub fn isolated_vertex_cap(n: usize, d: u32) -> f64 {
    (n as f64).powf((d - 2) as f64 / (2 * d - 2) as f64)
}

/// Everything predicted for one parameter set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Predictions {
    pub params: ModelParams,
    pub mu: Vec<f64>,
    pub expected_r: ExpectedDeletions,
    pub k: u32,
    pub regime: Regime,
    pub isolated_vertex_cap: f64,
    pub isolated_tree_decay: f64,
    /// Set when `mu_2` is of constant order, where the bush-count argument
    /// switches to its `log log n` branch.
    pub mu2_constant_order: bool,
    /// `(k, predicted count)` for the queried run lengths.
    pub expected_deg2_paths: Vec<(u32, f64)>,
}

pub fn predictions(params: &ModelParams, path_lengths: &[u32]) -> Result<Predictions> {
    let mu = (0..=params.d).map(|j| mu(j, params)).collect::<Result<Vec<_>>>()?;
    let core = CoreStats::predicted(params);
    let expected_deg2_paths = path_lengths
        .iter()
        .map(|&k| expected_deg2_paths(&core, k).map(|v| (k, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Predictions {
        mu2_constant_order: (0.1..=10.0).contains(&mu[2]),
        mu,
        expected_r: expected_r(params.n, params.alpha),
        k: bush_bound_k(params.d, params.eta)?,
        regime: regime_classify(params.d, params.eta),
        isolated_vertex_cap: isolated_vertex_cap(params.n, params.d),
        isolated_tree_decay: isolated_tree_decay(params),
        params: *params,
        expected_deg2_paths,
    })
}
