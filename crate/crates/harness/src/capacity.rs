//! Multicast capacity and per-receiver threshold arithmetic.

/// Capacity contribution of one receiver: the rate at which it can absorb
/// the `K - M` unknown messages, `(1 / (K - M)) * 1/2 log2(1 + 1/sigma^2)`.
pub fn capacity_term(k: usize, rank_s: usize, sigma2: f64) -> f64 {
    assert!(rank_s < k, "receiver must miss at least one message");
    assert!(sigma2 > 0.0);
    0.5 * (1.0 + 1.0 / sigma2).log2() / (k - rank_s) as f64
}

/// Symmetric multicast capacity: the worst receiver's term.
pub fn capacity(receivers: &[(usize, f64)], k: usize) -> f64 {
    assert!(!receivers.is_empty());
    receivers
        .iter()
        .map(|&(m, s2)| capacity_term(k, m, s2))
        .fold(f64::INFINITY, f64::min)
}

/// Both algebraic forms of the per-receiver threshold condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCheck {
    /// 1/2 log2(1 + 1/sigma^2) >= (R + eps)(K - M)
    pub snr_form: bool,
    /// sigma_z^2 <= 2^(-2 (R + eps)(K - M))
    pub noise_form: bool,
    /// Margin of the SNR form in bits (negative when unsatisfied).
    pub margin_bits: f64,
}

impl ThresholdCheck {
    pub fn satisfied(&self) -> bool {
        self.snr_form
    }
}

/// Evaluate the threshold condition in both forms. They are algebraically
/// equivalent; both are computed so tests can confirm the equivalence
/// numerically.
pub fn threshold_check(
    rank_s: usize,
    sigma2: f64,
    rate: f64,
    epsilon: f64,
    k: usize,
) -> ThresholdCheck {
    assert!(rank_s < k && sigma2 > 0.0);
    let needed = (rate + epsilon) * (k - rank_s) as f64;
    let half_log = 0.5 * (1.0 + 1.0 / sigma2).log2();
    let sigma_z2 = sigma2 / (1.0 + sigma2);
    ThresholdCheck {
        snr_form: half_log >= needed,
        noise_form: sigma_z2 <= (2.0f64).powf(-2.0 * needed),
        margin_bits: half_log - needed,
    }
}

/// SNR in decibels for a unit-power transmitter.
pub fn snr_db(sigma2: f64) -> f64 {
    10.0 * (1.0 / sigma2).log10()
}

/// Noise variance at a given SNR in decibels.
pub fn sigma2_from_snr_db(snr_db: f64) -> f64 {
    (10.0f64).powf(-snr_db / 10.0)
}

/// Noise variance sitting exactly on the threshold of Eq. form
/// `1/2 log2(1 + 1/sigma^2) = (rate + eps)(K - M)`.
pub fn threshold_sigma2(rank_s: usize, rate: f64, epsilon: f64, k: usize) -> f64 {
    let needed = (rate + epsilon) * (k - rank_s) as f64;
    1.0 / ((2.0f64).powf(2.0 * needed) - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_hand_computed_values() {
        // single-user AWGN at sigma^2 = 1
        assert!((capacity(&[(0, 1.0)], 1) - 0.5).abs() < 1e-12);
        // K=3, one receiver with M=1 at sigma^2 = 1
        assert!((capacity(&[(1, 1.0)], 3) - 0.25).abs() < 1e-12);
        // two receivers, K=2: min(0.5805, 0.5) = 0.5
        let c = capacity(&[(0, 0.25), (1, 1.0)], 2);
        let term0 = 0.5 * (5.0f64).log2() / 2.0;
        assert!(term0 > 0.5);
        assert!((c - 0.5).abs() < 1e-12);
    }

    #[test]
    fn capacity_is_monotone() {
        let base = capacity(&[(1, 1.0), (0, 0.5)], 3);
        // lowering noise can only help
        assert!(capacity(&[(1, 0.5), (0, 0.5)], 3) >= base - 1e-12);
        // more side information can only help
        assert!(capacity(&[(2, 1.0), (0, 0.5)], 3) >= base - 1e-12);
    }

    #[test]
    fn threshold_boundary_and_off_boundary() {
        // K=1, M=0, R=0.25, eps=0.25, sigma^2=1: 0.5 >= 0.5 on the boundary
        let t = threshold_check(0, 1.0, 0.25, 0.25, 1);
        assert!(t.snr_form && t.noise_form);
        assert!(t.margin_bits.abs() < 1e-12);

        // same but sigma^2 = 2: 0.2925 < 0.5
        let t = threshold_check(0, 2.0, 0.25, 0.25, 1);
        assert!(!t.snr_form && !t.noise_form);

        // M = K-1 compares against (R + eps) * 1
        let t = threshold_check(2, 0.1, 0.5, 0.5, 3);
        let expect = 0.5 * (11.0f64).log2() >= 1.0;
        assert_eq!(t.snr_form, expect);
    }

    #[test]
    fn threshold_forms_agree_on_random_tuples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(41);
        for _ in 0..1000 {
            let k = rng.gen_range(1..=4);
            let m = rng.gen_range(0..k);
            let sigma2 = (10.0f64).powf(rng.gen_range(-1.5..1.5));
            let rate = rng.gen_range(0.05..2.0);
            let eps = rng.gen_range(0.05..2.0);
            let t = threshold_check(m, sigma2, rate, eps, k);
            // both forms agree away from the boundary; random tuples are
            // never within 1e-12 of it
            assert_eq!(t.snr_form, t.noise_form, "{k} {m} {sigma2} {rate} {eps}");
        }
    }

    #[test]
    fn threshold_sigma2_sits_on_boundary() {
        for (m, rate, eps, k) in [(0usize, 0.5, 0.25, 2usize), (1, 0.58, 0.1, 2), (0, 1.0, 0.5, 1)] {
            let s2 = threshold_sigma2(m, rate, eps, k);
            let t = threshold_check(m, s2, rate, eps, k);
            assert!(t.margin_bits.abs() < 1e-9);
        }
    }

    #[test]
    fn snr_conversions_roundtrip() {
        for s2 in [0.1, 0.5, 1.0, 2.0, 10.0] {
            assert!((sigma2_from_snr_db(snr_db(s2)) - s2).abs() < 1e-12);
        }
    }
}
