//! Scenario-driven simulation harness for lattice-coded multicast with
//! coded side information: parameter selection, capacity and threshold
//! computation, Monte Carlo campaigns, all-subspaces network mode, and the
//! verification suite.

pub mod capacity;
pub mod error;
pub mod output;
pub mod runner;
pub mod scenario;
pub mod stats;
pub mod verify;

pub use error::{HarnessError, Result};
