use super::DensityMatrix;
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tol;

/// Pure state on `A ⊗ B ⊗ C` with `Tr_C |ψ><ψ| = ρ_AB`.
///
/// `|ψ> = Σ_k √λ_k |ψ_k> ⊗ |k>`, amplitude index `(a * dB + b) * dC + c`.
/// The purifying system C has one level per retained eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Purification {
    pub state_vector: Vec<Complex64>,
    /// `(dA, dB, dC)`.
    pub dims: (usize, usize, usize),
    /// Retained eigenpairs `(λ_k, |ψ_k>)` of the source state.
    pub source_eigensystem: Vec<(f64, Vec<Complex64>)>,
}

/// Purifies with C sized to the number of eigenvalues above the clamp.
pub fn purify(rho: &DensityMatrix) -> Purification {
    purify_above(rho, tol::EIG_CLAMP)
}

/// Purifies keeping eigenvalues strictly above `threshold`. Dropped weight
/// is redistributed proportionally so the vector stays normalized.
pub fn purify_above(rho: &DensityMatrix, threshold: f64) -> Purification {
    let eig = rho.eigen();
    let mut kept: Vec<(f64, Vec<Complex64>)> = eig
        .clamped_eigenvalues()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > threshold)
        .map(|(k, &l)| (l, eig.eigenvector(k)))
        .collect();
    if kept.is_empty() {
        kept.push((1.0, eig.eigenvector(0)));
    }
    let total: f64 = kept.iter().map(|(l, _)| l).sum();
    kept.iter_mut().for_each(|(l, _)| *l /= total);

    let (da, db) = rho.dims();
    let dc = kept.len();
    let mut state_vector = vec![Complex64::new(0.0, 0.0); da * db * dc];
    for (c, (lambda, v)) in kept.iter().enumerate() {
        let amp = lambda.sqrt();
        for (ab, z) in v.iter().enumerate() {
            state_vector[ab * dc + c] = z * amp;
        }
    }
    Purification {
        state_vector,
        dims: (da, db, dc),
        source_eigensystem: kept,
    }
}

impl Purification {
    pub fn norm(&self) -> f64 {
        self.state_vector.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    fn amp(&self, a: usize, b: usize, c: usize) -> Complex64 {
        let (_, db, dc) = self.dims;
        self.state_vector[(a * db + b) * dc + c]
    }

    /// `Tr_C |ψ><ψ|`.
    pub fn reduced_ab(&self) -> ComplexMatrix {
        let (da, db, dc) = self.dims;
        ComplexMatrix::from_fn(da * db, da * db, |r, s| {
            (0..dc)
                .map(|c| self.amp(r / db, r % db, c) * self.amp(s / db, s % db, c).conj())
                .sum()
        })
    }

    /// `Tr_B |ψ><ψ|` as a state on `A ⊗ C`.
    pub fn reduced_ac(&self) -> DensityMatrix {
        let (da, db, dc) = self.dims;
        let m = ComplexMatrix::from_fn(da * dc, da * dc, |r, s| {
            (0..db)
                .map(|b| self.amp(r / dc, b, r % dc) * self.amp(s / dc, b, s % dc).conj())
                .sum()
        });
        DensityMatrix::new((da, dc), m).expect("reduction of a pure state is a state")
    }

    /// `Tr_AB |ψ><ψ|`.
    pub fn reduced_c(&self) -> ComplexMatrix {
        let (da, db, dc) = self.dims;
        ComplexMatrix::from_fn(dc, dc, |c, c2| {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..da {
                for b in 0..db {
                    acc += self.amp(a, b, c) * self.amp(a, b, c2).conj();
                }
            }
            acc
        })
    }
}
