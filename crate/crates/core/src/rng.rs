//! Deterministic RNG stream derivation.
//!
//! Every random quantity in a simulation is drawn from its own ChaCha stream
//! keyed by (master seed, domain, two indices). Streams are independent of
//! execution order, so parallel trial workers reproduce the sequential run
//! bit for bit.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// What a derived stream is used for. The tag is baked into the seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamDomain {
    Generator = 1,
    Dither = 2,
    Message = 3,
    Noise = 4,
    Check = 5,
}

/// Derive the stream for `(master_seed, domain, a, b)`.
pub fn stream(master_seed: u64, domain: StreamDomain, a: u64, b: u64) -> ChaCha12Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&(domain as u64).to_le_bytes());
    seed[16..24].copy_from_slice(&a.to_le_bytes());
    seed[24..32].copy_from_slice(&b.to_le_bytes());
    ChaCha12Rng::from_seed(seed)
}

/// Mix a sub-index into a master seed, for nested experiments that each need
/// their own full family of streams (e.g. per-codebook ensembles).
pub fn derive_seed(master_seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = master_seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
