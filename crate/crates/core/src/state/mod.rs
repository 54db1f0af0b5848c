//! Bipartite density matrices, the named state families, random states and
//! purifications.

mod families;
mod json;
mod purify;
pub mod random;

pub use families::{bell_phi_plus, make_bell_diagonal, make_example1, make_horodecki, make_rho2, FamilySpec};
pub use json::StateJson;
pub use purify::{purify, purify_above, Purification};
pub use random::{make_random_rank2, random_pure_state, random_unitary};

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, partial_trace, tensor, Complex64, ComplexMatrix, EigenDecomposition, Subsystem};
use crate::tol;

/// A validated state on `A ⊗ B`, basis index `a * dB + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: (usize, usize),
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity at the state tolerance.
    pub fn new(dims: (usize, usize), matrix: ComplexMatrix) -> Result<Self> {
        Self::validated(dims, matrix, tol::STATE, tol::STATE)
    }

    /// Validation used for external input, with separate Hermiticity and
    /// trace tolerances. Small trace drift is normalized away.
    pub(crate) fn validated(
        dims: (usize, usize),
        matrix: ComplexMatrix,
        hermitian_tol: f64,
        trace_tol: f64,
    ) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if dims.0 == 0 || dims.1 == 0 || dims.0 * dims.1 != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "dims {}x{} do not match a {}x{} matrix",
                dims.0,
                dims.1,
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > hermitian_tol {
            return Err(Error::NotHermitian { deviation });
        }
        let mut matrix = matrix.hermitian_part();
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > trace_tol || trace.im.abs() > trace_tol {
            return Err(Error::TraceNotOne {
                trace_re: trace.re,
                trace_im: trace.im,
            });
        }
        if (trace.re - 1.0).abs() > tol::STATE {
            matrix = matrix.scale_real(1.0 / trace.re);
        }
        let min_eigenvalue = *hermitian_eig(&matrix)?
            .eigenvalues
            .last()
            .expect("non-empty matrix");
        if min_eigenvalue < -tol::STATE {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { dims, matrix })
    }

    /// `|ψ><ψ|` for a (not necessarily normalized) vector.
    pub fn pure(dims: (usize, usize), psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::DimensionMismatch("zero state vector".into()));
        }
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(dims, ComplexMatrix::projector(&unit))
    }

    /// Product state `ρ_A ⊗ ρ_B`.
    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        Self::new((rho_a.rows(), rho_b.rows()), tensor(rho_a, rho_b))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dims == (2, 2)
    }

    pub fn reduced(&self, side: Subsystem) -> ComplexMatrix {
        partial_trace(&self.matrix, self.dims, side).expect("dims validated at construction")
    }

    pub fn eigen(&self) -> EigenDecomposition {
        hermitian_eig(&self.matrix).expect("density matrices are Hermitian")
    }

    /// Clamped spectrum, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().clamped_eigenvalues()
    }

    /// Number of eigenvalues above the rank threshold.
    pub fn rank(&self) -> usize {
        self.eigen().rank(tol::RANK)
    }

    /// `(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†`.
    pub fn local_unitary(&self, ua: &ComplexMatrix, ub: &ComplexMatrix) -> Result<Self> {
        if ua.rows() != self.dims.0 || ub.rows() != self.dims.1 {
            return Err(Error::DimensionMismatch("local unitary size".into()));
        }
        let u = tensor(ua, ub);
        let m = &(&u * &self.matrix) * &u.adjoint();
        Self::new(self.dims, m)
    }

    /// The same state with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        let (da, db) = self.dims;
        let idx = |k: usize| (k % da) * db + k / da;
        let matrix = ComplexMatrix::from_fn(self.dim(), self.dim(), |r, c| self.matrix[(idx(r), idx(c))]);
        Self {
            dims: (db, da),
            matrix,
        }
    }
}
