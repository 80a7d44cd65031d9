//! AWGN transmission and the receiver chain.
//!
//! The receiver scales the channel output by the MMSE coefficient, removes
//! the dither and the side-information offset, quantizes to the subcode
//! lattice by exact search over its cosets modulo the coarse lattice, and
//! maps the winning coset back to a message.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::code::{index_to_message, NestedCode};
use crate::error::Result;
use crate::fp::FpMatrix;
use crate::lattice::LatticeSpec;
use crate::sideinfo::ExpurgationData;
use crate::vecmath::{add, scale, sq_norm, sub};

/// MMSE scaling coefficient and derived noise figures for one receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderParams {
    /// alpha = 1 / (1 + sigma^2)
    pub alpha: f64,
    /// Effective noise variance sigma^2 / (1 + sigma^2)
    pub sigma_z2: f64,
    /// Tail slack delta = 2^(eps/2) - 1
    pub delta: f64,
    /// Typical-noise radius sqrt(n (1 + delta) sigma_z^2)
    pub r_z: f64,
}

/// Derive the MMSE decoder parameters for a receiver noise level.
pub fn mmse_params(sigma2: f64, epsilon: f64, n: usize) -> DecoderParams {
    assert!(sigma2 > 0.0 && epsilon > 0.0);
    let alpha = 1.0 / (1.0 + sigma2);
    let sigma_z2 = sigma2 / (1.0 + sigma2);
    let delta = (2.0f64).powf(epsilon / 2.0) - 1.0;
    let r_z = (n as f64 * (1.0 + delta) * sigma_z2).sqrt();
    DecoderParams { alpha, sigma_z2, delta, r_z }
}

/// `y = x + noise`, noise i.i.d. Gaussian with the given variance per
/// dimension.
pub fn add_awgn<R: Rng>(x: &[f64], sigma2: f64, rng: &mut R) -> Vec<f64> {
    assert!(sigma2 > 0.0);
    let sigma = sigma2.sqrt();
    x.iter()
        .map(|&v| v + sigma * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Standard normal vector (used where the caller scales the noise itself).
pub fn standard_normal_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// What the decoder recovered and how close the competition was.
#[derive(Debug, Clone)]
pub struct DecodeEstimate {
    /// Recovered message `w = v + A_S w~`.
    pub w_hat: FpMatrix,
    /// Lexicographic index of the winning effective message.
    pub w_tilde_index: u128,
    /// Winning coset leader.
    pub t_tilde: Vec<f64>,
    /// Subcode lattice point closest to the processed output.
    pub fine_point: Vec<f64>,
    /// Squared residual of the winner.
    pub best_sq_residual: f64,
    /// Squared residual of the runner-up (infinite when only one coset).
    pub second_sq_residual: f64,
}

/// Outcome of one transmission at one receiver, with ground truth applied.
#[derive(Debug, Clone)]
pub struct DecodeOutcome {
    pub w_hat: FpMatrix,
    /// Recovered message differs from the transmitted one.
    pub error_event: bool,
    /// The code generator was rank deficient, so the whole codebook errs.
    pub rank_event: bool,
    pub best_sq_residual: f64,
    pub second_sq_residual: f64,
}

/// Decode the channel output `y` by enumerating subcode cosets.
///
/// The closest point of the subcode lattice to the processed output is found
/// exactly: for each coset leader the residual to the coarse lattice is
/// computed, and the leader with the smallest residual wins (ties go to the
/// lowest lexicographic index).
pub fn decode(
    code: &NestedCode,
    exp: &ExpurgationData,
    y: &[f64],
    params: &DecoderParams,
    enumeration_cap: u128,
) -> Result<DecodeEstimate> {
    let cosets = code.enumerate_cosets(exp.sub_generator(), enumeration_cap)?;
    Ok(decode_with_cosets(code, exp, &cosets, y, params))
}

/// Decoding against precomputed coset leaders (the hot path in simulations).
pub fn decode_with_cosets(
    code: &NestedCode,
    exp: &ExpurgationData,
    cosets: &[Vec<f64>],
    y: &[f64],
    params: &DecoderParams,
) -> DecodeEstimate {
    let offset = code.lift_message(exp.coset_leader());
    let scaled = scale(y, params.alpha);
    let y_prime = add(&sub(&scaled, &offset), code.dither());

    let (best_idx, best_sq, second_sq) = nearest_coset(code.coarse(), cosets, &y_prime);
    let w_tilde = index_to_message(code.params().field(), exp.sub_generator().cols(), best_idx);
    let w_hat = exp.recover_message(&w_tilde);
    let t_tilde = cosets[best_idx as usize].clone();
    let residual_to_coarse = sub(&y_prime, &t_tilde);
    let coarse_part = code
        .coarse()
        .quantize(&residual_to_coarse)
        .expect("dimensions agree");
    let fine_point = add(&t_tilde, &coarse_part);
    DecodeEstimate {
        w_hat,
        w_tilde_index: best_idx,
        t_tilde,
        fine_point,
        best_sq_residual: best_sq,
        second_sq_residual: second_sq,
    }
}

/// Decide the error event from the realized effective noise
/// `z = alpha * noise - (1 - alpha) * x`: quantizing `z` to the subcode
/// lattice lands outside the coarse lattice exactly when the nonzero coset
/// wins.
pub fn error_event_from_noise(
    code: &NestedCode,
    exp: &ExpurgationData,
    z: &[f64],
    enumeration_cap: u128,
) -> Result<bool> {
    let cosets = code.enumerate_cosets(exp.sub_generator(), enumeration_cap)?;
    Ok(error_event_from_noise_with_cosets(code.coarse(), &cosets, z))
}

pub fn error_event_from_noise_with_cosets(
    coarse: &LatticeSpec,
    cosets: &[Vec<f64>],
    z: &[f64],
) -> bool {
    let (best_idx, _, _) = nearest_coset(coarse, cosets, z);
    best_idx != 0
}

/// Effective noise seen by the lattice decoder.
pub fn effective_noise(x: &[f64], noise: &[f64], alpha: f64) -> Vec<f64> {
    sub(&scale(noise, alpha), &scale(x, 1.0 - alpha))
}

fn nearest_coset(coarse: &LatticeSpec, cosets: &[Vec<f64>], target: &[f64]) -> (u128, f64, f64) {
    assert!(!cosets.is_empty());
    let mut best_idx = 0u128;
    let mut best_sq = f64::INFINITY;
    let mut second_sq = f64::INFINITY;
    for (idx, leader) in cosets.iter().enumerate() {
        let residual = coarse
            .mod_lattice(&sub(target, leader))
            .expect("dimensions agree");
        let d = sq_norm(&residual);
        if d < best_sq {
            second_sq = best_sq;
            best_sq = d;
            best_idx = idx as u128;
        } else if d < second_sq {
            second_sq = d;
        }
    }
    (best_idx, best_sq, second_sq)
}

/// Empirical check of the effective-noise tail bound.
#[derive(Debug, Clone, Copy)]
pub struct TailCheck {
    pub empirical: f64,
    pub bound: f64,
    pub trials: usize,
    /// empirical <= bound + 5 binomial sigma
    pub ok: bool,
}

/// Sample `x` uniform over the coarse Voronoi region (covering radius
/// sqrt(n)) and Gaussian channel noise, and compare the tail frequency of
/// `||z||^2 > n sigma_z^2 (1 + delta)` against the analytic bound
/// `exp(-n (delta - ln(1+delta)) / 2) + exp(-n sigma^2 delta^2 / 4)`.
pub fn noise_tail_check<R: Rng>(
    sigma2: f64,
    epsilon: f64,
    n: usize,
    trials: usize,
    rng: &mut R,
) -> TailCheck {
    assert!(trials > 0);
    let coarse = LatticeSpec::scaled_to_covering(crate::lattice::LatticeFamily::Zn, n)
        .expect("Zn exists in every dimension");
    let params = mmse_params(sigma2, epsilon, n);
    let threshold = n as f64 * params.sigma_z2 * (1.0 + params.delta);
    let mut exceed = 0usize;
    for _ in 0..trials {
        let x = crate::code::sample_dither(&coarse, rng);
        let noise = scale(&standard_normal_vector(n, rng), sigma2.sqrt());
        let z = effective_noise(&x, &noise, params.alpha);
        if sq_norm(&z) > threshold {
            exceed += 1;
        }
    }
    let empirical = exceed as f64 / trials as f64;
    let d = params.delta;
    let bound = (-(n as f64) * (d - (1.0 + d).ln()) / 2.0).exp()
        + (-(n as f64) * sigma2 * d * d / 4.0).exp();
    let slack = 5.0 * (empirical * (1.0 - empirical) / trials as f64).sqrt();
    TailCheck { empirical, bound, trials, ok: empirical <= bound + slack }
}
