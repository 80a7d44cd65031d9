//! Scenario execution: code construction, Monte Carlo trial loops and
//! ensemble sweeps.
//!
//! Every random quantity has its own derived stream, so results do not
//! depend on thread count or execution order: message streams are keyed by
//! trial (one broadcast per trial, common to all receivers), noise streams
//! by (receiver, trial). Runs with equal seeds share transmissions and noise
//! realizations, which gives common-random-number comparisons across
//! scenarios for free.

use latcast_core::channel::{
    add_awgn, decode_with_cosets, mmse_params, DecoderParams,
};
use latcast_core::code::{random_message, sample_dither, NestedCode};
use latcast_core::fp::FpMatrix;
use latcast_core::rng::{derive_seed, stream, StreamDomain};
use latcast_core::sideinfo::{enumerate_subspaces, expurgate, ExpurgationData, SideInfoMatrix};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{capacity_term, snr_db, threshold_check};
use crate::error::{from_core, HarnessError, Result};
use crate::scenario::{Scenario, ValidatedScenario};
use crate::stats::{wilson_interval, CodeMeta, NetworkSummary, ReceiverSummary, RunSummary};

/// Maximum generator redraws before giving up (rank failures are
/// exponentially rare, so hitting this indicates a misconfiguration).
const MAX_GENERATOR_REDRAWS: usize = 100;

/// A constructed code plus bookkeeping about how it was drawn.
pub struct BuiltCode {
    pub code: NestedCode,
    pub redraws: usize,
    /// False only when redrawing was disabled and the single draw failed.
    pub rank_ok: bool,
}

/// Draw the generator and dither for a validated scenario.
///
/// With `redraw_on_rank_failure`, rank-deficient generators are redrawn (and
/// counted); otherwise the single draw is kept and flagged, and the caller
/// treats the whole codebook as failed.
pub fn build_code(v: &ValidatedScenario, redraw_on_rank_failure: bool) -> Result<BuiltCode> {
    let field = v.params.field();
    let n = v.params.n();
    let cols = v.params.message_len();
    let mut redraws = 0;
    let mut rank_ok = true;
    let mut generator = FpMatrix::random(
        field,
        n,
        cols,
        &mut stream(v.seed, StreamDomain::Generator, 0, 0),
    );
    if redraw_on_rank_failure {
        while generator.rank() < cols {
            redraws += 1;
            if redraws > MAX_GENERATOR_REDRAWS {
                return Err(HarnessError::Config(format!(
                    "generator still rank deficient after {MAX_GENERATOR_REDRAWS} redraws"
                )));
            }
            generator = FpMatrix::random(
                field,
                n,
                cols,
                &mut stream(v.seed, StreamDomain::Generator, redraws as u64, 0),
            );
        }
    } else {
        rank_ok = generator.rank() == cols;
    }
    let dither = sample_dither(&v.coarse, &mut stream(v.seed, StreamDomain::Dither, 0, 0));
    let code = NestedCode::new(v.params, v.coarse.clone(), generator, dither);
    Ok(BuiltCode { code, redraws, rank_ok })
}

struct ReceiverCtx {
    side: SideInfoMatrix,
    sigma2: f64,
    template: ExpurgationData,
    cosets: Vec<Vec<f64>>,
    params: DecoderParams,
}

fn build_receiver_ctx(
    code: &NestedCode,
    side: SideInfoMatrix,
    sigma2: f64,
    epsilon: f64,
    cap: u128,
    index: usize,
) -> Result<ReceiverCtx> {
    let ell = code.params().ell();
    let zero_u = FpMatrix::zeros(code.params().field(), side.rank() * ell, 1);
    let template = expurgate(&side, &zero_u, code.generator(), ell)
        .map_err(|e| from_core(&format!("receivers[{index}]"), e))?;
    let cosets = code
        .enumerate_cosets(template.sub_generator(), cap)
        .map_err(|e| from_core(&format!("receivers[{index}] subcode"), e))?;
    let params = mmse_params(sigma2, epsilon, code.params().n());
    Ok(ReceiverCtx { side, sigma2, template, cosets, params })
}

/// Run a validated scenario against an already-built code.
pub fn run_built(
    v: &ValidatedScenario,
    built: &BuiltCode,
) -> Result<RunSummary> {
    let code = &built.code;
    let k = v.params.k();
    let ell = v.params.ell();

    let receiver_list: Vec<(SideInfoMatrix, f64)> = if v.network_mode {
        let sigma2 = v
            .network_sigma2
            .expect("validation guarantees network_sigma2 in network mode");
        enumerate_subspaces(v.params.field(), k, v.enumeration_cap)
            .map_err(|e| from_core("network receivers", e))?
            .into_iter()
            .map(|s| (s, sigma2))
            .collect()
    } else {
        v.receivers.clone()
    };

    let ctxs: Vec<ReceiverCtx> = receiver_list
        .into_iter()
        .enumerate()
        .map(|(i, (side, sigma2))| {
            build_receiver_ctx(code, side, sigma2, v.params.epsilon(), v.enumeration_cap, i)
        })
        .collect::<Result<_>>()?;

    let nr = ctxs.len();
    // counts[j] = errors at receiver j; counts[nr] = trials where any receiver errs
    let counts: Vec<u64> = if built.rank_ok {
        (0..v.trials as u64)
            .into_par_iter()
            .fold(
                || vec![0u64; nr + 1],
                |mut acc, trial| {
                    let errs = run_trial(code, &ctxs, v.seed, trial, ell);
                    let mut any = false;
                    for (j, e) in errs.iter().enumerate() {
                        acc[j] += *e as u64;
                        any |= *e;
                    }
                    acc[nr] += any as u64;
                    acc
                },
            )
            .reduce(
                || vec![0u64; nr + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        *x += y;
                    }
                    a
                },
            )
    } else {
        // rank-deficient generator: the whole codebook is declared in error
        vec![v.trials as u64; nr + 1]
    };

    let geometry = code.coarse().geometry();
    let meta = CodeMeta {
        p: v.params.field().modulus(),
        k,
        ell,
        n: v.params.n(),
        rate_design: v.params.rate(),
        rate_achieved: v.params.achieved_rate(),
        epsilon: v.params.epsilon(),
        lattice_family: code.coarse().family().name().to_string(),
        lattice_scale: code.coarse().scale(),
        r_cov: geometry.r_cov,
        r_eff: geometry.r_eff,
        covering_ratio: geometry.r_cov / geometry.r_eff,
        seed: v.seed,
        generator_redraws: built.redraws,
        network_mode: v.network_mode,
    };

    let receivers: Vec<ReceiverSummary> = ctxs
        .iter()
        .enumerate()
        .map(|(j, ctx)| {
            let errors = counts[j] as usize;
            let (ci_low, ci_high) = wilson_interval(errors, v.trials);
            ReceiverSummary {
                receiver_index: j,
                rank_s: ctx.side.rank(),
                sigma2: ctx.sigma2,
                snr_db: snr_db(ctx.sigma2),
                trials: v.trials,
                errors,
                error_rate: errors as f64 / v.trials as f64,
                ci_low,
                ci_high,
                threshold_satisfied: threshold_check(
                    ctx.side.rank(),
                    ctx.sigma2,
                    v.params.rate(),
                    v.params.epsilon(),
                    k,
                )
                .satisfied(),
                capacity_term_bits: capacity_term(k, ctx.side.rank(), ctx.sigma2),
            }
        })
        .collect();

    let capacity_bits_per_dim = receivers
        .iter()
        .map(|r| r.capacity_term_bits)
        .fold(f64::INFINITY, f64::min);

    let network = v.network_mode.then(|| {
        let errors = counts[nr] as usize;
        let (ci_low, ci_high) = wilson_interval(errors, v.trials);
        NetworkSummary {
            receiver_count: nr,
            trials: v.trials,
            errors,
            error_rate: errors as f64 / v.trials as f64,
            ci_low,
            ci_high,
        }
    });

    Ok(RunSummary { code: meta, capacity_bits_per_dim, receivers, network })
}

fn run_trial(
    code: &NestedCode,
    ctxs: &[ReceiverCtx],
    seed: u64,
    trial: u64,
    ell: usize,
) -> Vec<bool> {
    let field = code.params().field();
    let mut msg_rng = stream(seed, StreamDomain::Message, trial, 0);
    let w = random_message(field, code.params().message_len(), &mut msg_rng);
    let x = code.encode(&w);
    ctxs.iter()
        .enumerate()
        .map(|(j, ctx)| {
            let mut noise_rng = stream(seed, StreamDomain::Noise, j as u64, trial);
            let y = add_awgn(&x, ctx.sigma2, &mut noise_rng);
            let u = ctx.side.observe(&w, ell);
            let exp = ctx
                .template
                .with_side_values(&ctx.side, &u, ell)
                .expect("u derived from the true message is always consistent");
            let est = decode_with_cosets(code, &exp, &ctx.cosets, &y, &ctx.params);
            est.w_hat != w
        })
        .collect()
}

/// End-to-end: validate, build (with redraws) and run.
pub fn run_scenario(sc: &Scenario) -> Result<RunSummary> {
    let v = sc.validate()?;
    let built = build_code(&v, true)?;
    run_built(&v, &built)
}

/// Ensemble sweep result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub codebooks: usize,
    pub threshold: f64,
    /// Network error rate of each independently drawn (generator, dither).
    pub rates: Vec<f64>,
    pub mean_rate: f64,
    /// Fraction of codebooks with rate <= threshold.
    pub fraction_good: f64,
    /// Codebooks whose single generator draw was rank deficient.
    pub rank_failures: usize,
}

/// Draw independent codebooks and measure each one's network error rate in
/// all-subspaces mode. A rank-deficient draw counts as a failed codebook
/// (rate 1) rather than being redrawn.
pub fn ensemble_fraction_good(
    sc: &Scenario,
    codebooks: usize,
    threshold: f64,
) -> Result<EnsembleReport> {
    if codebooks < 10 {
        return Err(HarnessError::Config(format!(
            "codebooks: need at least 10 for an ensemble estimate, got {codebooks}"
        )));
    }
    let mut network_sc = sc.clone();
    network_sc.network_mode = true;
    network_sc.validate()?; // fail fast on configuration problems

    let mut rates = Vec::with_capacity(codebooks);
    let mut rank_failures = 0usize;
    for c in 0..codebooks {
        let mut sub = network_sc.clone();
        sub.seed = derive_seed(sc.seed, c as u64);
        let v = sub.validate()?;
        let built = build_code(&v, false)?;
        if !built.rank_ok {
            rank_failures += 1;
        }
        let summary = run_built(&v, &built)?;
        let rate = summary
            .network
            .expect("network mode always produces a network summary")
            .error_rate;
        rates.push(rate);
    }
    let mean_rate = rates.iter().sum::<f64>() / codebooks as f64;
    let good = rates.iter().filter(|&&r| r <= threshold).count();
    Ok(EnsembleReport {
        codebooks,
        threshold,
        rates,
        mean_rate,
        fraction_good: good as f64 / codebooks as f64,
        rank_failures,
    })
}
