//! Exact solver for bi-objective pure integer programs.
//!
//! The central method is a branch-and-bound over objective space whose lower
//! bound sets are made of segments with local nadir points. Criterion-space
//! baselines (epsilon-constraint, balanced box), three matrix problem families,
//! and a branch-and-price variant for a team orienteering problem with time
//! windows share the same archive and scalar solvers.

pub mod bnp;
pub mod bound;
pub mod criterion;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod lp;
pub mod mip;
pub mod model;
pub mod problems;

pub use error::{Error, Result};
