//! Exact solver for the weighted mutually exclusive set cover problem.
//!
//! Given a ground set `X = {0, .., n-1}`, a family `F` of `m` subsets of `X`
//! and a nonnegative weight on every subset, the task is to pick pairwise
//! disjoint subsets whose union is exactly `X` with minimum total weight, or
//! to prove that no such pick exists.
//!
//! The crate is `no_std` (it only needs `alloc`). It contains:
//!
//! - [`instance`]: the problem data model, validation and normalization;
//! - [`incidence`]: the element/set incidence view maintained during search,
//!   with an undo journal;
//! - [`solver`]: the branch-and-reduce search, which runs in `O*(1.299^m)`;
//! - [`oracle`]: exhaustive reference solvers used as ground truth;
//! - [`reduction`]: the maximum set packing to exact cover construction and
//!   the extraction of a packing from a cover;
//! - [`analysis`]: characteristic roots of branching recurrences and the
//!   leaf-count audit;
//! - [`generator`]: seeded instance generators.
//!
//! Text formats, the benchmark harness and the command-line tool live in the
//! `wmesc` companion crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
mod error;
pub mod generator;
pub mod incidence;
pub mod instance;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use fixedbitset::FixedBitSet;

pub use error::Error;
pub use instance::{normalize, verify_cover, Instance, Outcome, MAX_ELEMENTS, MAX_SETS};
pub use solver::{solve, BranchKind, SearchStats, SolveOptions};
