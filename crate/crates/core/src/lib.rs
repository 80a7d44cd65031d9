//! Nested lattice codes over prime fields for Gaussian multicast channels
//! with coded side information.
//!
//! The crate provides the full chain: exact linear algebra over F_p,
//! coarse lattices with exact quantizers, lifting of random linear codes to
//! nested lattice codebooks, algebraic binning against receiver side
//! information, and the AWGN receiver chain (MMSE scaling, subcode lattice
//! decoding, error-event bookkeeping).

pub mod channel;
pub mod code;
pub mod error;
pub mod fp;
pub mod lattice;
pub mod rng;
pub mod sideinfo;
pub mod vecmath;

pub use error::{Error, Result};
