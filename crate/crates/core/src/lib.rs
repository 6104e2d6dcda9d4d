//! Directed vertex multicut: random level cuts over epoch-refreshed capped
//! fractional cuts, a Gupta-style baseline, instance reductions with cut
//! pull-back, and exact oracles for small instances.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command line live in the companion `multicut` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cutter;
pub mod error;
pub mod fraccut;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod reductions;
pub mod simplex;

pub use cutter::{gupta_baseline, vertex_cut_main, AlgoConfig, CappedSolver, CutResult, RunTrace};
pub use error::Error;
pub use fraccut::{
    fractional_multicut, mass, min_capped_vertex_cut, min_capped_vertex_cut_flow,
    min_capped_vertex_cut_seeded, FractionalCutFamily, LpConfig, LpResult, WeightFunction,
};
pub use graph::{check_cut, CutSet, Demands, DirectedGraph, Distance, Flavor, Instance};
pub use oracle::{
    empirical_gap, exact_capped_vertex_cut_small, exact_fractional_multicut_small,
    exact_integral_multicut, menger_min_vertex_cut, OracleReport,
};
pub use reductions::{ReductionKind, ReductionMapping};

/// Tolerance applied wherever a weighted distance is compared against a
/// threshold such as `>= 1` or `>= L`.
pub const EPS_DIST: f64 = 1e-9;
