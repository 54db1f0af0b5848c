//! Quantum discord of rank-2 two-qubit states in closed form, and the
//! linear-entropy classical correlation of arbitrary `d ⊗ 2` states, with
//! brute-force measurement and decomposition oracles to check both.
//!
//! Conventions: computational basis per subsystem with bipartite index
//! `a * dB + b`; logarithms base 2; the measured subsystem is always B.

pub mod bloch;
pub mod discord;
pub mod error;
pub mod matrix;
pub mod measures;
pub mod oracles;
pub mod state;
pub mod tol;
pub mod validate;

pub use error::{Error, Result};
