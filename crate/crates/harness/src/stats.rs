//! Summary statistics and confidence intervals.

use serde::{Deserialize, Serialize};

/// 97.5% standard normal quantile, for 95% Wilson intervals.
const Z_95: f64 = 1.959963984540054;

/// Wilson 95% score interval for a binomial proportion. Well behaved at
/// zero observed errors.
pub fn wilson_interval(errors: usize, trials: usize) -> (f64, f64) {
    assert!(trials > 0 && errors <= trials);
    let n = trials as f64;
    let p_hat = errors as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the interval endpoints are exactly 0 and 1 at the extremes; pin them
    // so float residue does not leak into emitted files
    let lo = if errors == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if errors == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Per-receiver simulation outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReceiverSummary {
    pub receiver_index: usize,
    pub rank_s: usize,
    pub sigma2: f64,
    pub snr_db: f64,
    pub trials: usize,
    pub errors: usize,
    pub error_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub threshold_satisfied: bool,
    pub capacity_term_bits: f64,
}

/// Code instance metadata attached to every run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeMeta {
    pub p: u64,
    pub k: usize,
    pub ell: usize,
    pub n: usize,
    pub rate_design: f64,
    pub rate_achieved: f64,
    pub epsilon: f64,
    pub lattice_family: String,
    pub lattice_scale: f64,
    pub r_cov: f64,
    pub r_eff: f64,
    /// r_cov / r_eff, the achieved covering ratio (1 would be ideal).
    pub covering_ratio: f64,
    pub seed: u64,
    pub generator_redraws: usize,
    pub network_mode: bool,
}

/// Network-wide outcome: a trial errs when any receiver errs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub receiver_count: usize,
    pub trials: usize,
    pub errors: usize,
    pub error_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Full machine-readable result of a scenario run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub code: CodeMeta,
    pub capacity_bits_per_dim: f64,
    pub receivers: Vec<ReceiverSummary>,
    pub network: Option<NetworkSummary>,
}
