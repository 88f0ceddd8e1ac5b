//! File formats, experiment drivers and the `metanet` command line for
//! [`metanet_core`].

pub mod cli;
pub mod config;
pub mod formats;
pub mod manifest;

pub use manifest::RunManifest;
