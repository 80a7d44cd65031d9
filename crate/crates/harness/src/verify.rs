//! Named verification checks: small, fast oracles for every structural
//! claim the coding chain relies on. The `verify` subcommand runs them all;
//! the acceptance suite pins specific parameterizations.

use latcast_core::channel::{
    decode_with_cosets, effective_noise, error_event_from_noise_with_cosets, mmse_params,
    noise_tail_check, standard_normal_vector,
};
use latcast_core::code::{
    choose_prime, index_to_message, random_message, sample_dither, CodeParams, NestedCode,
};
use latcast_core::fp::{FpMatrix, PrimeField};
use latcast_core::lattice::{unit_ball_volume, LatticeFamily, LatticeSpec};
use latcast_core::rng::{stream, StreamDomain};
use latcast_core::sideinfo::{enumerate_subspaces, expurgate, subspace_count, SideInfoMatrix};
use latcast_core::vecmath::{add, distance, norm, scale, sub};
use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::capacity::{capacity, threshold_check};

/// Noise variance used by the decoding-identity check; chosen so that
/// roughly a tenth of the trials err at p=5, K=2, ell=1, n=4, M=1.
pub const EQ30_SIGMA2: f64 = 0.08;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, details: String) -> Self {
        Self { name: name.to_string(), passed, details }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl std::str::FromStr for VerifyLevel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(VerifyLevel::Quick),
            "full" => Ok(VerifyLevel::Full),
            other => Err(format!("unknown level \"{other}\" (expected quick or full)")),
        }
    }
}

/// Run every check at the requested size tier.
pub fn run_verify(level: VerifyLevel, seed: u64) -> Vec<CheckResult> {
    let full = level == VerifyLevel::Full;
    let mut results = vec![
        check_field_axioms(),
        check_bijection(if full { 50 } else { 10 }, seed),
        check_coset_uniformity(if full { 100_000 } else { 20_000 }, seed),
        check_counting_bound(100, seed),
    ];
    let dims: &[usize] = if full { &[4, 8, 16] } else { &[4, 8] };
    let sigmas: &[f64] = if full { &[0.25, 1.0] } else { &[1.0] };
    results.push(check_noise_tail(
        dims,
        sigmas,
        if full { 100_000 } else { 20_000 },
        seed,
    ));
    results.push(check_dither_independence(
        if full { 100_000 } else { 20_000 },
        seed,
    ));
    results.push(check_decoding_identity(
        if full { 10_000 } else { 2_000 },
        EQ30_SIGMA2,
        seed,
    ));
    results.push(check_rank_failure_bound(
        if full { 100_000 } else { 20_000 },
        seed,
    ));
    results.push(check_quantizer_oracle(if full { 1_000 } else { 200 }, seed));
    results.push(check_mod_distributivity(seed));
    results.push(check_subspace_counts());
    results.push(check_threshold_equivalence(seed));
    results.push(check_capacity_values());
    results.push(check_parameter_chooser());
    results.push(check_power_constraint(seed));
    results
}

/// Exhaustive scalar field axioms for all primes up to 97.
pub fn check_field_axioms() -> CheckResult {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
        71, 73, 79, 83, 89, 97];
    let mut checked = 0u64;
    for &p in &primes {
        let f = PrimeField::new(p).unwrap();
        for a in 0..p {
            if a != 0 && f.mul(a, f.inv(a)) != 1 {
                return CheckResult::new(
                    "field_axioms",
                    false,
                    format!("inverse failed for {a} mod {p}"),
                );
            }
            for b in 0..p {
                let ok = f.add(a, b) == (a + b) % p
                    && f.mul(a, b) == a * b % p
                    && f.sub(f.add(a, b), b) == a;
                if !ok {
                    return CheckResult::new(
                        "field_axioms",
                        false,
                        format!("arithmetic failed for ({a}, {b}) mod {p}"),
                    );
                }
                checked += 1;
            }
        }
    }
    CheckResult::new(
        "field_axioms",
        true,
        format!("{} primes, {checked} pairs exhaustively checked", primes.len()),
    )
}

fn draw_full_rank_generator<R: Rng>(
    field: PrimeField,
    n: usize,
    cols: usize,
    rng: &mut R,
) -> FpMatrix {
    loop {
        let g = FpMatrix::random(field, n, cols, rng);
        if g.rank() == cols {
            return g;
        }
    }
}

fn build_check_code(
    p: u64,
    k: usize,
    ell: usize,
    n: usize,
    seed: u64,
    tag: u64,
) -> NestedCode {
    let field = PrimeField::new(p).unwrap();
    let rate = ell as f64 / n as f64 * (p as f64).log2();
    let params = CodeParams::new(k, ell, n, rate, 1.0, field).unwrap();
    let coarse = LatticeSpec::scaled_to_covering(LatticeFamily::Zn, n).unwrap();
    let mut rng = stream(seed, StreamDomain::Check, tag, 0);
    let gen = draw_full_rank_generator(field, n, k * ell, &mut rng);
    let dither = sample_dither(&coarse, &mut rng);
    NestedCode::new(params, coarse, gen, dither)
}

/// Message-to-codeword map is injective: at p=5, K=2, ell=1, n=8, every
/// full-rank generator maps all 25 messages to 25 distinct points of the
/// fine lattice inside the Voronoi region.
pub fn check_bijection(generators: usize, seed: u64) -> CheckResult {
    let p = 5u64;
    let (k, ell, n) = (2usize, 1usize, 8usize);
    let field = PrimeField::new(p).unwrap();
    let total = 25usize;
    let mut min_pairwise = f64::INFINITY;
    for g_idx in 0..generators {
        let code = build_check_code(p, k, ell, n, seed, 100 + g_idx as u64);
        let points: Vec<Vec<f64>> = (0..total)
            .map(|i| code.map_message_to_t(&index_to_message(field, 2, i as u128)))
            .collect();
        for (i, a) in points.iter().enumerate() {
            // membership and Voronoi residence
            if !code.fine_lattice_contains(a) {
                return CheckResult::new(
                    "lemma1_bijection",
                    false,
                    format!("generator {g_idx}: point {i} escapes the fine lattice"),
                );
            }
            let reduced = code.coarse().mod_lattice(a).unwrap();
            if distance(a, &reduced) > 1e-9 {
                return CheckResult::new(
                    "lemma1_bijection",
                    false,
                    format!("generator {g_idx}: point {i} escapes the Voronoi region"),
                );
            }
            for b in points.iter().take(i) {
                let d = distance(a, b);
                min_pairwise = min_pairwise.min(d);
                if d < 1e-9 {
                    return CheckResult::new(
                        "lemma1_bijection",
                        false,
                        format!("generator {g_idx}: two messages collide (distance {d:.2e})"),
                    );
                }
            }
        }
    }
    CheckResult::new(
        "lemma1_bijection",
        true,
        format!(
            "{generators} generators x {total} messages distinct; min pairwise distance {min_pairwise:.4}"
        ),
    )
}

/// For fixed nonzero w and uniform G, the coset leader is uniform over the
/// p^n points of (p^-1 coarse) / coarse. Chi-square over the 9 cells at
/// n=2, p=3.
pub fn check_coset_uniformity(draws: usize, seed: u64) -> CheckResult {
    let p = 3u64;
    let field = PrimeField::new(p).unwrap();
    let coarse = LatticeSpec::scaled_to_covering(LatticeFamily::Zn, 2).unwrap();
    // the 9 reference points indexed by integer vectors mod p
    let refs: Vec<Vec<f64>> = (0..9)
        .map(|idx| {
            let j = [(idx / 3) as f64, (idx % 3) as f64];
            let point = coarse.lattice_point(&[j[0] / p as f64, j[1] / p as f64]);
            coarse.mod_lattice(&point).unwrap()
        })
        .collect();

    let mut counts = [0u64; 9];
    let mut rng = stream(seed, StreamDomain::Check, 2, 0);
    for _ in 0..draws {
        // w = [1], so Gw is just the uniform column G
        let g = FpMatrix::random(field, 2, 1, &mut rng);
        let point = coarse.lattice_point(&[
            g[(0, 0)] as f64 / p as f64,
            g[(1, 0)] as f64 / p as f64,
        ]);
        let t = coarse.mod_lattice(&point).unwrap();
        let cell = refs
            .iter()
            .position(|r| distance(r, &t) < 1e-9)
            .expect("every leader lands on a reference point");
        counts[cell] += 1;
    }
    let expected = draws as f64 / 9.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let critical = ChiSquared::new(8.0).unwrap().inverse_cdf(1.0 - 1e-3);
    CheckResult::new(
        "lemma2_uniformity",
        chi2 < critical,
        format!("chi2 {chi2:.3} vs critical {critical:.3} over {draws} draws"),
    )
}

/// Counting bound: points of a lattice in a ball never exceed
/// (V_n / Vol) * (r_cov + r)^n. Exhaustive counts on Z^2 and D_2.
pub fn check_counting_bound(balls: usize, seed: u64) -> CheckResult {
    let mut rng = stream(seed, StreamDomain::Check, 3, 0);
    let mut max_ratio: f64 = 0.0;
    for l in [
        LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap(),
        LatticeSpec::new(LatticeFamily::Dn, 2, 1.0).unwrap(),
    ] {
        let g = l.geometry();
        for _ in 0..balls {
            let center: Vec<f64> = (0..2).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let r = rng.gen_range(0.0..5.0);
            let count = l.count_points_in_ball(&center, r).unwrap() as f64;
            let bound = unit_ball_volume(2) / g.volume * (g.r_cov + r).powi(2);
            if count > bound + 1e-9 {
                return CheckResult::new(
                    "lemma3_counting",
                    false,
                    format!(
                        "{} ball at {center:?} r={r:.3}: count {count} exceeds bound {bound:.3}",
                        l.family().name()
                    ),
                );
            }
            if bound > 0.0 {
                max_ratio = max_ratio.max(count / bound);
            }
        }
    }
    CheckResult::new(
        "lemma3_counting",
        true,
        format!("{balls} balls per lattice, zero violations; max count/bound {max_ratio:.3}"),
    )
}

/// Effective-noise tail bound over a grid of dimensions and noise levels.
pub fn check_noise_tail(dims: &[usize], sigmas: &[f64], trials: usize, seed: u64) -> CheckResult {
    let mut rng = stream(seed, StreamDomain::Check, 4, 0);
    let mut lines = Vec::new();
    let mut all_ok = true;
    for &n in dims {
        for &sigma2 in sigmas {
            let check = noise_tail_check(sigma2, 1.0, n, trials, &mut rng);
            all_ok &= check.ok;
            lines.push(format!(
                "n={n} s2={sigma2}: emp {:.2e} bound {:.2e}",
                check.empirical,
                check.bound.min(1.0)
            ));
        }
    }
    CheckResult::new("lemma4_noise_tail", all_ok, lines.join("; "))
}

/// Dithering makes the transmit point uniform over the Voronoi region and
/// statistically independent of the undithered coset leader.
pub fn check_dither_independence(trials: usize, seed: u64) -> CheckResult {
    let p = 3u64;
    let field = PrimeField::new(p).unwrap();
    let n = 2usize;
    let coarse = LatticeSpec::scaled_to_covering(LatticeFamily::Zn, n).unwrap();
    let half = coarse.scale() / 2.0; // Voronoi region is the square [-half, half)^2
    let params = CodeParams::new(1, 1, n, 1.0, 1.0, field).unwrap();
    let mut rng = stream(seed, StreamDomain::Check, 5, 0);
    let generator = draw_full_rank_generator(field, n, 1, &mut rng);

    const BINS: usize = 8;
    let mut bin_counts = [[0u64; BINS]; 2];
    let mut sums = Stats2::default();
    for _ in 0..trials {
        let dither = sample_dither(&coarse, &mut rng);
        let code = NestedCode::new(params, coarse.clone(), generator.clone(), dither);
        let w = random_message(field, 1, &mut rng);
        let t = code.map_message_to_t(&w);
        let x = code.encode(&w);
        for c in 0..2 {
            let frac = (x[c] + half) / (2.0 * half);
            let bin = ((frac * BINS as f64) as usize).min(BINS - 1);
            bin_counts[c][bin] += 1;
        }
        sums.update(&x, &t);
    }

    let critical = ChiSquared::new((BINS - 1) as f64).unwrap().inverse_cdf(1.0 - 1e-3);
    let mut worst_chi2: f64 = 0.0;
    for counts in &bin_counts {
        let expected = trials as f64 / BINS as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        worst_chi2 = worst_chi2.max(chi2);
    }
    let max_corr = sums.max_abs_correlation(trials);
    let corr_bound = 5.0 / (trials as f64).sqrt();
    let passed = worst_chi2 < critical && max_corr < corr_bound;
    CheckResult::new(
        "lemma5_crypto",
        passed,
        format!(
            "uniformity chi2 {worst_chi2:.2} vs {critical:.2}; max |corr(x, t)| {max_corr:.4} vs {corr_bound:.4}"
        ),
    )
}

/// Running sums for the 2x2 cross-correlation between x and t coordinates.
#[derive(Default)]
struct Stats2 {
    sx: [f64; 2],
    st: [f64; 2],
    sxx: [f64; 2],
    stt: [f64; 2],
    sxt: [[f64; 2]; 2],
}

impl Stats2 {
    fn update(&mut self, x: &[f64], t: &[f64]) {
        for i in 0..2 {
            self.sx[i] += x[i];
            self.st[i] += t[i];
            self.sxx[i] += x[i] * x[i];
            self.stt[i] += t[i] * t[i];
            for j in 0..2 {
                self.sxt[i][j] += x[i] * t[j];
            }
        }
    }

    fn max_abs_correlation(&self, n: usize) -> f64 {
        let n = n as f64;
        let mut max_corr: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let cov = self.sxt[i][j] / n - self.sx[i] / n * self.st[j] / n;
                let var_x = self.sxx[i] / n - (self.sx[i] / n).powi(2);
                let var_t = self.stt[j] / n - (self.st[j] / n).powi(2);
                if var_x > 0.0 && var_t > 0.0 {
                    max_corr = max_corr.max((cov / (var_x * var_t).sqrt()).abs());
                }
            }
        }
        max_corr
    }
}

/// The central decoding identity: a decode error occurs exactly when the
/// known effective noise quantizes to a fine-lattice point outside the
/// coarse lattice.
pub fn check_decoding_identity(trials: usize, sigma2: f64, seed: u64) -> CheckResult {
    let code = build_check_code(5, 2, 1, 4, seed, 6);
    let field = code.params().field();
    let side =
        SideInfoMatrix::canonicalize(&FpMatrix::from_rows(field, &[vec![0, 1]])).unwrap();
    let params = mmse_params(sigma2, 1.0, 4);
    let zero_u = FpMatrix::zeros(field, 1, 1);
    let template = expurgate(&side, &zero_u, code.generator(), 1).unwrap();
    let cosets = code.enumerate_cosets(template.sub_generator(), 1_000).unwrap();

    let mut rng = stream(seed, StreamDomain::Check, 7, 0);
    let mut errors = 0usize;
    for trial in 0..trials {
        let w = random_message(field, 2, &mut rng);
        let u = side.observe(&w, 1);
        let exp = template.with_side_values(&side, &u, 1).unwrap();
        let x = code.encode(&w);
        let noise = scale(&standard_normal_vector(4, &mut rng), sigma2.sqrt());
        let y = add(&x, &noise);
        let est = decode_with_cosets(&code, &exp, &cosets, &y, &params);
        let decode_error = est.w_hat != w;
        let z = effective_noise(&x, &noise, params.alpha);
        let event = error_event_from_noise_with_cosets(code.coarse(), &cosets, &z);
        if decode_error != event {
            return CheckResult::new(
                "eq30_identity",
                false,
                format!("trial {trial}: decode error {decode_error} but noise event {event}"),
            );
        }
        errors += decode_error as usize;
    }
    CheckResult::new(
        "eq30_identity",
        true,
        format!(
            "identity held on all {trials} trials (error rate {:.3})",
            errors as f64 / trials as f64
        ),
    )
}

/// Monte Carlo rank-failure frequency against the p^-(n - K ell) bound.
pub fn check_rank_failure_bound(draws: usize, seed: u64) -> CheckResult {
    let field = PrimeField::new(5).unwrap();
    let (n, cols) = (8usize, 2usize);
    let mut rng = stream(seed, StreamDomain::Check, 8, 0);
    let mut failures = 0u64;
    for _ in 0..draws {
        if FpMatrix::random(field, n, cols, &mut rng).rank() < cols {
            failures += 1;
        }
    }
    let bound = 5.0f64.powi(-((n - cols) as i32));
    let rate = failures as f64 / draws as f64;
    let slack = 5.0 * (bound * (1.0 - bound) / draws as f64).sqrt();
    CheckResult::new(
        "eq17_rank_failure",
        rate <= bound + slack,
        format!("{failures} failures / {draws} draws; rate {rate:.2e} vs bound {bound:.2e}"),
    )
}

/// Exhaustive nearest-point search over a coefficient box (independent of
/// the per-family fast quantizers).
pub fn exhaustive_nearest(l: &LatticeSpec, x: &[f64]) -> Vec<f64> {
    let coeffs = l.coefficients_of(x);
    let anchor: Vec<f64> = coeffs.iter().map(|c| c.round()).collect();
    let anchor_point = l.lattice_point(&anchor);
    let radius = distance(x, &anchor_point) + 1e-9;
    let (lo, hi) = l.coefficient_box(x, radius);
    let dim = x.len();
    let mut best = anchor_point;
    let mut best_d = radius;
    let mut c = lo.clone();
    'outer: loop {
        let real: Vec<f64> = c.iter().map(|&v| v as f64).collect();
        let point = l.lattice_point(&real);
        let d = distance(&point, x);
        if d < best_d {
            best_d = d;
            best = point;
        }
        for i in 0..dim {
            c[i] += 1;
            if c[i] <= hi[i] {
                continue 'outer;
            }
            c[i] = lo[i];
        }
        break;
    }
    best
}

/// Fast quantizers agree with exhaustive search for n <= 3.
pub fn check_quantizer_oracle(points: usize, seed: u64) -> CheckResult {
    let mut rng = stream(seed, StreamDomain::Check, 9, 0);
    let configs = [
        (LatticeFamily::Zn, 1usize),
        (LatticeFamily::Zn, 2),
        (LatticeFamily::Zn, 3),
        (LatticeFamily::Dn, 2),
        (LatticeFamily::Dn, 3),
    ];
    let mut max_dev: f64 = 0.0;
    let mut tested = 0usize;
    for (family, n) in configs {
        for scale_choice in 0..2 {
            let l = if scale_choice == 0 {
                LatticeSpec::new(family, n, 1.0).unwrap()
            } else {
                LatticeSpec::scaled_to_covering(family, n).unwrap()
            };
            let span = 4.0 * l.scale() * (n as f64).sqrt();
            for _ in 0..points {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-span..span)).collect();
                let fast = l.quantize(&x).unwrap();
                let oracle = exhaustive_nearest(&l, &x);
                let dev = fast
                    .iter()
                    .zip(&oracle)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                max_dev = max_dev.max(dev);
                tested += 1;
                if dev > 1e-9 {
                    return CheckResult::new(
                        "quantizer_oracle",
                        false,
                        format!(
                            "{} n={n} scale {:.3}: {x:?} -> {fast:?} but oracle {oracle:?}",
                            family.name(),
                            l.scale()
                        ),
                    );
                }
            }
        }
    }
    CheckResult::new(
        "quantizer_oracle",
        true,
        format!("{tested} points matched exhaustive search; max deviation {max_dev:.2e}"),
    )
}

/// Modulo reduction distributes over addition for every supported family.
pub fn check_mod_distributivity(seed: u64) -> CheckResult {
    let mut rng = stream(seed, StreamDomain::Check, 10, 0);
    let mut max_dev: f64 = 0.0;
    for l in [
        LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap(),
        LatticeSpec::new(LatticeFamily::Dn, 2, 1.0).unwrap(),
        LatticeSpec::new(LatticeFamily::Dn, 3, 1.7).unwrap(),
        LatticeSpec::new(LatticeFamily::E8, 8, 1.0).unwrap(),
    ] {
        let n = l.dim();
        for _ in 0..100 {
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let lhs = l.mod_lattice(&add(&a, &b)).unwrap();
            let rhs = l.mod_lattice(&add(&l.mod_lattice(&a).unwrap(), &b)).unwrap();
            let dev = norm(&sub(&lhs, &rhs));
            max_dev = max_dev.max(dev);
            if dev > 1e-9 {
                return CheckResult::new(
                    "mod_distributivity",
                    false,
                    format!("{} n={n}: deviation {dev:.2e}", l.family().name()),
                );
            }
        }
    }
    CheckResult::new(
        "mod_distributivity",
        true,
        format!("400 random pairs across 4 lattices; max deviation {max_dev:.2e}"),
    )
}

/// Subspace enumeration matches the Gaussian binomial counts.
pub fn check_subspace_counts() -> CheckResult {
    let mut lines = Vec::new();
    for (p, k) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3)] {
        let field = PrimeField::new(p).unwrap();
        let subs = enumerate_subspaces(field, k, 1_000_000).unwrap();
        let expected: u128 = (0..k as u64).map(|m| subspace_count(p, k, m as usize)).sum();
        if subs.len() as u128 != expected {
            return CheckResult::new(
                "subspace_counts",
                false,
                format!("p={p} K={k}: got {} subspaces, expected {expected}", subs.len()),
            );
        }
        lines.push(format!("p={p},K={k}:{expected}"));
    }
    CheckResult::new("subspace_counts", true, lines.join(" "))
}

/// The SNR and effective-noise forms of the threshold condition agree.
pub fn check_threshold_equivalence(seed: u64) -> CheckResult {
    let mut rng = stream(seed, StreamDomain::Check, 11, 0);
    for i in 0..1000 {
        let k = rng.gen_range(1..=4usize);
        let m = rng.gen_range(0..k);
        let sigma2 = (10.0f64).powf(rng.gen_range(-1.5..1.5));
        let rate = rng.gen_range(0.05..2.0);
        let eps = rng.gen_range(0.05..2.0);
        let t = threshold_check(m, sigma2, rate, eps, k);
        if t.snr_form != t.noise_form {
            return CheckResult::new(
                "threshold_equivalence",
                false,
                format!("tuple {i}: forms disagree at K={k} M={m} s2={sigma2} R={rate} eps={eps}"),
            );
        }
    }
    CheckResult::new("threshold_equivalence", true, "1000 random tuples agree".to_string())
}

/// Capacity formula reproduces hand-computed values exactly.
pub fn check_capacity_values() -> CheckResult {
    let cases = [
        (capacity(&[(0, 1.0)], 1), 0.5),
        (capacity(&[(1, 1.0)], 3), 0.25),
        (capacity(&[(0, 0.25), (1, 1.0)], 2), 0.5),
    ];
    for (got, want) in cases {
        if (got - want).abs() > 1e-12 {
            return CheckResult::new(
                "capacity_values",
                false,
                format!("got {got}, expected {want}"),
            );
        }
    }
    CheckResult::new("capacity_values", true, "3 hand-computed values to 1e-12".to_string())
}

/// The prime chooser matches direct evaluation of its bound.
pub fn check_parameter_chooser() -> CheckResult {
    let cases = [((2usize, 0.5, 1.0), 5u64), ((1, 0.25, 8.0), 2), ((1, 1.0, 4.0), 5)];
    for ((k, rate, eps), want) in cases {
        let got = choose_prime(k, rate, eps).unwrap().modulus();
        if got != want {
            return CheckResult::new(
                "parameter_chooser",
                false,
                format!("K={k} R={rate} eps={eps}: got p={got}, expected {want}"),
            );
        }
    }
    CheckResult::new("parameter_chooser", true, "3 cases match the bound".to_string())
}

/// Every codeword satisfies the per-codeword power constraint.
pub fn check_power_constraint(seed: u64) -> CheckResult {
    let code = build_check_code(3, 2, 1, 4, seed, 12);
    let n = code.params().n() as f64;
    let mut max_power: f64 = 0.0;
    for idx in 0..9u128 {
        let w = index_to_message(code.params().field(), 2, idx);
        let x = code.encode(&w);
        max_power = max_power.max(latcast_core::vecmath::sq_norm(&x) / n);
    }
    let d_ok = norm(code.dither()) <= n.sqrt() + 1e-9;
    CheckResult::new(
        "power_constraint",
        max_power <= 1.0 + 1e-9 && d_ok,
        format!("max ||x||^2/n = {max_power:.4} over 9 codewords"),
    )
}
