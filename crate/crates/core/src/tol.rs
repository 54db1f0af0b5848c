//! Numerical thresholds shared across modules.

/// Maximum entrywise |m - m†| accepted as Hermitian by the kernels.
pub const HERMITIAN: f64 = 1e-10;

/// Eigenvalues with magnitude below this are treated as exact zeros.
pub const EIG_CLAMP: f64 = 1e-12;

/// Eigenvalues above this count towards the rank of a state.
pub const RANK: f64 = 1e-10;

/// Trace and positivity slack for constructed density matrices.
pub const STATE: f64 = 1e-10;

/// Hermiticity and trace slack accepted when parsing external JSON.
pub const PARSE: f64 = 1e-8;

/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_OFF: f64 = 1e-14;

/// Upper bound on cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Allowed overshoot of the entropic argument of `f` outside [0, 1].
pub const F_ARGUMENT: f64 = 1e-9;
