//! Blockmodel tools for relating node metadata to network structure.
//!
//! The crate covers four areas:
//!
//! - block scores: Bernoulli SBM entropies, Poisson SBM and degree-corrected
//!   log-likelihoods, the multinomial DCSBM entropy and modularity
//!   ([`models`]);
//! - the blockmodel entropy significance test, a permutation test of whether
//!   a metadata partition explains the edges better than shuffled labels
//!   ([`bestest`]);
//! - the neoSBM, which interpolates between a metadata partition and the
//!   likelihood-optimal partition by penalizing "free" nodes ([`neosbm`]);
//! - partition comparison (NMI, AMI, VI), set-partition enumeration and the
//!   AMI homogeneity check ([`metrics`]).
//!
//! Synthetic generators live in [`synthgen`] and the partition-landscape
//! embedding in [`landscape`].
//!
//! The crate is `no_std` + `alloc`. Enabling the `std` feature spreads
//! permutation replicates and MCMC restarts over a rayon pool; results are
//! identical with or without it because every replicate draws from its own
//! counter-derived random stream.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bestest;
pub mod error;
pub mod graph;
pub mod landscape;
pub mod math;
pub mod metrics;
pub mod models;
pub mod neosbm;
pub mod partition;
pub mod rng;
pub mod stats;
pub mod synthgen;

mod par;

pub use error::{Error, Result};
pub use graph::Graph;
pub use models::{Model, Orientation, ScoreKind, ScoreValue};
pub use partition::Partition;
pub use stats::BlockStats;
