//! Finite-group symmetry engine and dense quantum-circuit simulator.
//!
//! `symmetra` builds character tables for cyclic, symmetric, and direct-product
//! groups, turns them into explicit unitaries (the quantum character transform),
//! and combines those with conjugacy-class-indexed SELECT operations to project
//! statevectors onto irreducible-representation sectors. Every circuit-style
//! construction has a dense matrix oracle next to it so the two routes can be
//! compared numerically.
//!
//! The crate is organized around the pipeline:
//!
//! - [`groups`]: finite groups, conjugacy classes, characters (Frobenius formula
//!   for symmetric groups, exponential formula for cyclic, Kronecker for products).
//! - [`simulator`]: dense statevectors and operators, register-local application,
//!   post-selected measurement, and an exact Hermitian eigensolver.
//! - [`reps`]: unitary representations acting on qubit registers as basis
//!   permutations with phases (shifts, parity flips, block permutations,
//!   magnetic translations).
//! - [`qct`]: the character transform as a padded unitary on the irrep register.
//! - [`tgsa`]: class mixers, SELECT over conjugacy classes, the generalized
//!   symmetry-adapted transform, and dense projector oracles.
//! - [`qpe`]: phase estimation and its symmetry-adapted composition.
//! - [`models`]: worked physical systems (Ising chain, Harper-Hofstadter,
//!   H2 in first quantization, three-particle exchange sectors).
//! - [`resources`]: closed-form fault-tolerant gate-count estimators.
//! - [`selftest`]: the release acceptance checks, usable from tests and the CLI.
//!
//! All values are immutable after construction and safe to share across threads;
//! operations are pure functions returning new values.

pub mod error;
pub mod groups;
pub mod models;
pub mod qct;
pub mod qpe;
pub mod reps;
pub mod resources;
pub mod selftest;
pub mod simulator;
pub mod tgsa;
pub mod wire;

pub use error::{Error, Result};
