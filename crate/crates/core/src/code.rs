//! Nested lattice codes from random linear codes over F_p.
//!
//! A fine lattice is carved out of the coarse lattice by lifting a linear
//! code: scale the coarse generator by 1/p, embed codewords with the natural
//! map F_p -> {0,...,p-1} and tile. Messages map to coset leaders inside the
//! coarse Voronoi region, and the transmit codeword is the dithered coset
//! leader.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, PrimeField};
use crate::lattice::LatticeSpec;
use crate::vecmath::sub;

/// Default cap on subcode enumerations.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Static parameters of a code instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeParams {
    k: usize,
    ell: usize,
    n: usize,
    rate: f64,
    epsilon: f64,
    field: PrimeField,
}

impl CodeParams {
    pub fn new(
        k: usize,
        ell: usize,
        n: usize,
        rate: f64,
        epsilon: f64,
        field: PrimeField,
    ) -> Result<Self> {
        assert!(k >= 1 && ell >= 1 && n >= 1);
        assert!(rate > 0.0 && epsilon > 0.0);
        if k * ell >= n {
            return Err(Error::DimensionMismatch { expected: n - 1, got: k * ell });
        }
        let achieved = ell as f64 / n as f64 * (field.modulus() as f64).log2();
        if achieved > rate + 1e-12 {
            return Err(Error::RateTooSmall);
        }
        Ok(Self { k, ell, n, rate, epsilon, field })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Message symbols encoded by the lattice code.
    pub fn message_len(&self) -> usize {
        self.k * self.ell
    }

    /// The rate actually realized: (ell / n) * log2(p) bits per dimension.
    pub fn achieved_rate(&self) -> f64 {
        self.ell as f64 / self.n as f64 * (self.field.modulus() as f64).log2()
    }
}

/// Smallest prime satisfying p >= max(2^(2KR), (2^(eps/4)-1)^-1 * 2^-R).
pub fn choose_prime(k: usize, rate: f64, epsilon: f64) -> Result<PrimeField> {
    assert!(rate > 0.0 && epsilon > 0.0);
    let bound = prime_lower_bound(k, rate, epsilon);
    if bound >= (1u64 << 31) as f64 {
        return Err(Error::ModulusTooLarge(bound as u64));
    }
    let mut candidate = bound.ceil() as u64;
    if candidate < 2 {
        candidate = 2;
    }
    loop {
        if let Ok(f) = PrimeField::new(candidate) {
            return Ok(f);
        }
        candidate += 1;
    }
}

/// The lower bound on p required by the scheme for (K, R, epsilon).
pub fn prime_lower_bound(k: usize, rate: f64, epsilon: f64) -> f64 {
    let full_rank_term = (2.0f64).powf(2.0 * k as f64 * rate);
    let ensemble_term = (2.0f64).powf(-rate) / ((2.0f64).powf(epsilon / 4.0) - 1.0);
    full_rank_term.max(ensemble_term)
}

/// Largest ell with (ell/n) log2(p) <= R, clipped so that K*ell < n.
pub fn choose_ell(k: usize, n: usize, rate: f64, field: PrimeField) -> Result<usize> {
    assert!(k >= 1 && n > k, "need K < n");
    let by_rate = (n as f64 * rate / (field.modulus() as f64).log2()).floor() as usize;
    let by_dim = (n - 1) / k;
    let ell = by_rate.min(by_dim);
    if ell == 0 {
        return Err(Error::RateTooSmall);
    }
    Ok(ell)
}

/// A concrete nested lattice code instance.
#[derive(Debug, Clone)]
pub struct NestedCode {
    params: CodeParams,
    coarse: LatticeSpec,
    generator: FpMatrix,
    dither: Vec<f64>,
}

impl NestedCode {
    pub fn new(
        params: CodeParams,
        coarse: LatticeSpec,
        generator: FpMatrix,
        dither: Vec<f64>,
    ) -> Self {
        assert_eq!(coarse.dim(), params.n(), "coarse lattice dimension mismatch");
        assert_eq!(generator.rows(), params.n(), "generator row count mismatch");
        assert_eq!(generator.cols(), params.message_len(), "generator column count mismatch");
        assert_eq!(generator.field(), params.field());
        assert_eq!(dither.len(), params.n());
        Self { params, coarse, generator, dither }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn coarse(&self) -> &LatticeSpec {
        &self.coarse
    }

    pub fn generator(&self) -> &FpMatrix {
        &self.generator
    }

    pub fn dither(&self) -> &[f64] {
        &self.dither
    }

    pub fn check_full_rank(&self) -> bool {
        self.generator.rank() == self.params.message_len()
    }

    /// The fine-lattice point `B_c p^-1 g(c)` for a codeword `c` of the
    /// underlying linear code (no modulo reduction).
    pub fn lift_codeword(&self, codeword: &FpMatrix) -> Vec<f64> {
        assert_eq!(codeword.rows(), self.params.n());
        assert_eq!(codeword.cols(), 1);
        let p = self.params.field().modulus() as f64;
        let coeffs: Vec<f64> = codeword.entries().iter().map(|&e| e as f64 / p).collect();
        self.coarse.lattice_point(&coeffs)
    }

    /// `B_c p^-1 g(G m)` for a message-space vector `m` (no modulo).
    pub fn lift_message(&self, m: &FpMatrix) -> Vec<f64> {
        self.lift_codeword(&self.generator.mul(m))
    }

    /// Map a message to its undithered coset leader in the Voronoi region.
    pub fn map_message_to_t(&self, w: &FpMatrix) -> Vec<f64> {
        assert_eq!(w.rows(), self.params.message_len());
        self.coarse
            .mod_lattice(&self.lift_message(w))
            .expect("dimensions agree by construction")
    }

    /// Dithered transmit codeword `x = [t - d] mod coarse`.
    pub fn encode(&self, w: &FpMatrix) -> Vec<f64> {
        let t = self.map_message_to_t(w);
        self.coarse
            .mod_lattice(&sub(&t, &self.dither))
            .expect("dimensions agree by construction")
    }

    /// Coset leaders of the subcode generated by `sub_generator`, indexed by
    /// the message vector in lexicographic order (first symbol most
    /// significant).
    pub fn enumerate_cosets(
        &self,
        sub_generator: &FpMatrix,
        cap: u128,
    ) -> Result<Vec<Vec<f64>>> {
        assert_eq!(sub_generator.rows(), self.params.n());
        let p = self.params.field().modulus();
        let m = sub_generator.cols();
        let total = (p as u128)
            .checked_pow(m as u32)
            .ok_or(Error::EnumerationTooLarge { required: u128::MAX, cap })?;
        if total > cap {
            return Err(Error::EnumerationTooLarge { required: total, cap });
        }
        let mut leaders = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let w = index_to_message(self.params.field(), m, idx);
            let lifted = self.lift_codeword(&sub_generator.mul(&w));
            leaders.push(self.coarse.mod_lattice(&lifted).expect("dims agree"));
        }
        Ok(leaders)
    }

    /// Whether a point belongs to the fine lattice: its scaled coarse
    /// coordinates must be integers that reduce into the column space of G.
    pub fn fine_lattice_contains(&self, point: &[f64]) -> bool {
        let p = self.params.field().modulus();
        let coeffs = self.coarse.coefficients_of(point);
        let mut residues = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            let scaled = c * p as f64;
            let rounded = scaled.round();
            if (scaled - rounded).abs() > 1e-6 {
                return false;
            }
            residues.push(self.params.field().reduce_i64(rounded as i64));
        }
        let target = FpMatrix::column_vector(self.params.field(), &residues);
        self.generator.particular_solution(&target).is_ok()
    }
}

/// Uniform dither from the coarse Voronoi region: sample the fundamental
/// parallelepiped, then reduce (volume-preserving, hence still uniform).
pub fn sample_dither<R: Rng>(coarse: &LatticeSpec, rng: &mut R) -> Vec<f64> {
    let raw = coarse.sample_fundamental(rng);
    coarse.mod_lattice(&raw).expect("dims agree")
}

/// The message vector with the given lexicographic index.
pub fn index_to_message(field: PrimeField, len: usize, index: u128) -> FpMatrix {
    let p = field.modulus() as u128;
    let mut digits = vec![0u64; len];
    let mut rem = index;
    for d in digits.iter_mut().rev() {
        *d = (rem % p) as u64;
        rem /= p;
    }
    assert_eq!(rem, 0, "index out of range");
    FpMatrix::column_vector(field, &digits)
}

/// Lexicographic index of a message vector (first symbol most significant).
pub fn message_index(w: &FpMatrix) -> u128 {
    let p = w.field().modulus() as u128;
    w.entries().iter().fold(0u128, |acc, &d| acc * p + d as u128)
}

/// Uniform random message of the given length.
pub fn random_message<R: Rng>(field: PrimeField, len: usize, rng: &mut R) -> FpMatrix {
    FpMatrix::random(field, len, 1, rng)
}
