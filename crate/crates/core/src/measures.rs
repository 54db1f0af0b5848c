//! Entropies and two-qubit entanglement measures. Entropies are in bits.

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, tensor, trace_product, ComplexMatrix, Subsystem};
use crate::state::DensityMatrix;

/// `-Σ λ log2 λ` over the clamped spectrum.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> f64 {
    let eig = hermitian_eig(rho).expect("density matrices are Hermitian");
    let s: f64 = eig
        .clamped_eigenvalues()
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// `S₂(ρ) = 2[1 - Tr ρ²]`.
pub fn linear_entropy(rho: &ComplexMatrix) -> f64 {
    let purity = trace_product(rho, rho).expect("square matrix").re;
    2.0 * (1.0 - purity)
}

/// `h(x) = -x log2 x - (1-x) log2(1-x)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: "[0, 1]",
        });
    }
    let term = |y: f64| if y > 0.0 { -y * y.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// `f(x) = h((1 + √(1-x)) / 2)`: entanglement of formation as a function of
/// the squared concurrence.
pub fn f_map(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: "[0, 1]",
        });
    }
    binary_entropy((1.0 + (1.0 - x).sqrt()) / 2.0)
}

/// `I(ρ_AB) = S(ρ_A) + S(ρ_B) - S(ρ_AB)`.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    von_neumann_entropy(&rho.reduced(Subsystem::A)) + von_neumann_entropy(&rho.reduced(Subsystem::B))
        - von_neumann_entropy(rho.matrix())
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.is_two_qubit() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "two-qubit measure on a {}x{} state",
            rho.dims().0,
            rho.dims().1
        )))
    }
}

/// Wootters concurrence `max{0, s1 - s2 - s3 - s4}`.
///
/// The `s_k` are the square roots of the spectrum of `ρ (σy⊗σy) ρ* (σy⊗σy)`.
/// With `ρ = W W†`, `W = [√λ_k v_k]`, they are the singular values of the
/// complex-symmetric `T = Wᵀ (σy⊗σy) W`; those are read off as the positive
/// eigenvalues of the Hermitian dilation `[[0, T], [T†, 0]]`, which keeps
/// vanishing `s_k` at rounding level instead of the square root of it.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let eig = rho.eigen();
    let w = ComplexMatrix::from_fn(4, 4, |r, k| {
        eig.eigenvectors[(r, k)] * eig.eigenvalues[k].max(0.0).sqrt()
    });
    let yy = tensor(&ComplexMatrix::pauli_y(), &ComplexMatrix::pauli_y());
    let t = &(&w.transpose() * &yy) * &w;
    let t_adj = t.adjoint();
    let dilation = ComplexMatrix::from_fn(8, 8, |r, c| match (r < 4, c < 4) {
        (true, false) => t[(r, c - 4)],
        (false, true) => t_adj[(r - 4, c)],
        _ => Default::default(),
    });
    let s = hermitian_eig(&dilation.hermitian_part())?.eigenvalues;
    let c = s[0] - s[1] - s[2] - s[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Two-qubit tangle, `τ = C²`.
pub fn tangle_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(wootters_concurrence(rho)?.powi(2))
}

/// Two-qubit entanglement of formation, `E_f = f(C²)`.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    f_map(tangle_two_qubit(rho)?)
}
