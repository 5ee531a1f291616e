use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::theory::{bush_bound_k, regime_classify, ModelParams, Regime};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Rejection-sample until the projected graph is simple.
    #[default]
    SimpleGraph,
    /// Use the raw pairing, loops and multi-edges included.
    Multigraph,
}

/// One experiment. Written as flat `key = value` text:
///
/// ```
/// # use percolab::harness::ExperimentConfig;
/// let cfg = ExperimentConfig::from_toml_str(
///     "n = 1000\nd = 4\nalpha = 0.5\ntrials = 3\nbase_seed = 7\n",
/// ).unwrap();
/// assert_eq!(cfg.trial_seed(2), 9);
/// assert_eq!(cfg.k().unwrap(), 3);
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Deletion probability, as an alternative to `alpha`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Defaults to the deletion exponent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default = "one")]
    pub trials: u64,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub mode: SamplingMode,
    /// Exact expansion whenever `n - r` is at most the exhaustive limit.
    #[serde(default)]
    pub exhaustive_expansion: bool,
    /// Spectral and upper bounds on the giant component otherwise.
    #[serde(default)]
    pub expansion_bounds: bool,
    #[serde(default, alias = "K_override", skip_serializing_if = "Option::is_none")]
    pub k_override: Option<u32>,
    /// Worker threads; defaults to the number of CPUs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    /// Record wall-clock time per trial. Off by default so that reports
    /// stay byte-identical between runs.
    #[serde(default)]
    pub timing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json_path: Option<PathBuf>,
}

fn one() -> u64 {
    1
}

impl ExperimentConfig {
    /// Simple-graph config with defaults for everything not listed.
    pub fn new(n: usize, d: u32, alpha: f64, trials: u64, base_seed: u64) -> Self {
        ExperimentConfig {
            n,
            d,
            alpha: Some(alpha),
            p: None,
            eta: None,
            trials,
            base_seed,
            mode: SamplingMode::SimpleGraph,
            exhaustive_expansion: false,
            expansion_bounds: false,
            k_override: None,
            workers: None,
            timing: false,
            csv_path: None,
            json_path: None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config fields are plain values")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n < 2 {
            return bad(format!("n must be at least 2, got {}", self.n));
        }
        if self.d < 3 {
            return bad(format!("d must be at least 3, got {}", self.d));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        match (self.alpha, self.p) {
            (Some(_), Some(_)) => return bad("give alpha or p, not both".into()),
            (None, None) => return bad("one of alpha or p is required".into()),
            (Some(a), None) if !(a > 0.0) || !a.is_finite() => {
                return bad(format!("alpha must be positive and finite, got {a}"))
            }
            (None, Some(p)) if !(p > 0.0 && p < 1.0) => {
                return bad(format!("p must lie in (0, 1), got {p}"))
            }
            _ => {}
        }
        if let Some(eta) = self.eta {
            if !(eta > 0.0) || eta > self.effective_alpha() + 1e-12 {
                return bad(format!("eta must lie in (0, alpha], got {eta}"));
            }
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        Ok(())
    }

    /// Trial `index` runs on seed `base_seed + index` (wrapping).
    pub fn trial_seed(&self, index: u64) -> u64 {
        self.base_seed.wrapping_add(index)
    }

    pub fn deletion_probability(&self) -> f64 {
        match (self.alpha, self.p) {
            (_, Some(p)) => p,
            (Some(a), None) => (self.n as f64).powf(-a),
            (None, None) => unreachable!("validated config"),
        }
    }

    /// `alpha`, or `-ln p / ln n` when `p` is given.
    pub fn effective_alpha(&self) -> f64 {
        match self.alpha {
            Some(a) => a,
            None => -self.deletion_probability().ln() / (self.n as f64).ln(),
        }
    }

    pub fn effective_eta(&self) -> f64 {
        self.eta.unwrap_or_else(|| self.effective_alpha())
    }

    /// Bush size bound `K`, from `k_override` or the theory.
    pub fn k(&self) -> Result<u32> {
        match self.k_override {
            Some(k) => Ok(k),
            None => bush_bound_k(self.d, self.effective_eta()),
        }
    }

    /// The regime, known when `alpha` or `eta` was given explicitly.
    pub fn regime(&self) -> Option<Regime> {
        (self.alpha.is_some() || self.eta.is_some()).then(|| regime_classify(self.d, self.effective_eta()))
    }

    pub fn model_params(&self) -> Result<ModelParams> {
        ModelParams::new(self.n, self.d, self.effective_alpha(), self.effective_eta().min(self.effective_alpha()))
    }
}
