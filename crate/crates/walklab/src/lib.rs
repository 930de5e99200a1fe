//! Command-line front end, sequence file formats and the acceptance checks
//! for `walklab-core`.

pub mod cli;
pub mod formats;
pub mod verify;

pub use walklab_core as core;
