//! Local computations at p for refinements of GL(2n) principal series,
//! Shalika-model zeta integrals and branching-law interpolation, each checked
//! against an independent brute-force oracle.

pub mod branchfam;
pub mod cli;
pub mod error;
pub mod padic;
pub mod perm;
pub mod princhecke;
pub mod refine;
pub mod rootspin;
pub mod shalikazeta;
pub mod symring;

pub use error::{Error, Result};
