//! SU(d) generator bases, Bloch coordinates, and the affine Bloch form of the
//! qubit channel hidden in a `d ⊗ 2` state.
//!
//! A state `ρ_AB` with full-rank `ρ_B = Σ λ_i |φ_i><φ_i|` is the image of the
//! symmetric purification `Σ √λ_i |φ_i>|φ_i>` under `Λ ⊗ id`, for a channel
//! `Λ` from an auxiliary qubit B' to A. On the operator basis of B',
//!
//! ```text
//! Λ(|i><j|) = Tr_B[ρ_AB (I ⊗ |φ_j><φ_i|)] / √(λ_i λ_j)
//! ```
//!
//! where B' is written in the frame `|φ_i> -> |i>`. In Bloch coordinates the
//! channel acts as `r -> L r + l`.

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, symmetric_eigenvalues, trace_product, Complex64, ComplexMatrix, Subsystem};
use crate::measures::linear_entropy;
use crate::state::DensityMatrix;
use crate::tol;

/// Traceless Hermitian generators of SU(d) with `Tr(γ_a γ_b) = 2δ_ab`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<ComplexMatrix>,
}

/// Generalized Gell-Mann matrices: for each pair `j < k` the symmetric then
/// antisymmetric off-diagonal generator, followed by the `d - 1` diagonal
/// ones. For `d = 2` this is `(σx, σy, σz)`.
pub fn gell_mann_basis(d: usize) -> Result<GeneratorBasis> {
    if !(2..=4).contains(&d) {
        return Err(Error::OutOfDomain {
            name: "d",
            value: d as f64,
            domain: "{2, 3, 4}",
        });
    }
    let mut generators = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(j, k)] = Complex64::new(1.0, 0.0);
            sym[(k, j)] = Complex64::new(1.0, 0.0);
            generators.push(sym);

            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(j, k)] = Complex64::new(0.0, -1.0);
            anti[(k, j)] = Complex64::new(0.0, 1.0);
            generators.push(anti);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let diag: Vec<f64> = (0..d)
            .map(|i| match i.cmp(&l) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -(l as f64) * norm,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        generators.push(ComplexMatrix::diagonal(&diag));
    }
    Ok(GeneratorBasis { dim: d, generators })
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    /// `(I_d + r·γ) / d`.
    pub fn operator(&self, r: &BlochVector) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(self.dim);
        for (g, &x) in self.generators.iter().zip(&r.0) {
            m = &m + &g.scale_real(x);
        }
        m.scale_real(1.0 / self.dim as f64)
    }
}

/// Real coefficients `r` of `(I_d + r·γ)/d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector(pub Vec<f64>);

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Only meaningful for qubits, where valid states fill the unit ball.
    pub fn is_valid_qubit(&self) -> bool {
        self.0.len() == 3 && self.norm() <= 1.0 + 1e-10
    }
}

/// `r_m = (d/2) Tr(ρ γ_m)`.
pub fn bloch_of(rho: &ComplexMatrix, basis: &GeneratorBasis) -> Result<BlochVector> {
    if rho.rows() != basis.dim || rho.cols() != basis.dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator in a d = {} basis",
            rho.rows(),
            rho.cols(),
            basis.dim
        )));
    }
    let half_d = basis.dim as f64 / 2.0;
    Ok(BlochVector(
        basis
            .generators
            .iter()
            .map(|g| half_d * trace_product(rho, g).expect("same size").re)
            .collect(),
    ))
}

/// The qubit channel of a `d ⊗ 2` state and its affine Bloch data.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelBloch {
    output_dim: usize,
    /// `(d² - 1) x 3`, row-major.
    l_matrix: Vec<[f64; 3]>,
    /// `Λ(I/2)` coefficients, length `d² - 1`.
    offset: Vec<f64>,
    /// Spectrum of ρ_B, descending; the B' frame puts ρ_B = diag(λ).
    marginal_eigenvalues: [f64; 2],
    /// Columns are the eigenvectors `|φ_i>` of ρ_B used for the B' frame.
    marginal_basis: ComplexMatrix,
    /// `Λ(|i><j|)` at index `2 i + j`.
    action: [ComplexMatrix; 4],
    output_basis: GeneratorBasis,
}

fn require_qubit_b(rho: &DensityMatrix) -> Result<()> {
    match rho.dims() {
        (2..=4, 2) => Ok(()),
        (da, db) => Err(Error::DimensionMismatch(format!(
            "channel extraction needs a d x 2 state with d in 2..=4, got {da}x{db}"
        ))),
    }
}

/// Extracts Λ using the eigenbasis of ρ_B returned by the eigensolver.
pub fn extract_channel(rho: &DensityMatrix) -> Result<ChannelBloch> {
    require_qubit_b(rho)?;
    let eig = hermitian_eig(&rho.reduced(Subsystem::B))?;
    extract_channel_with_basis(rho, &eig.eigenvectors)
}

/// Extracts Λ in the B' frame fixed by `basis`, whose columns must be an
/// orthonormal eigenbasis of ρ_B (any choice within degenerate eigenspaces
/// and any phases). Eigenvalues are taken from `basis† ρ_B basis`.
pub fn extract_channel_with_basis(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<ChannelBloch> {
    require_qubit_b(rho)?;
    if basis.rows() != 2 || basis.cols() != 2 {
        return Err(Error::DimensionMismatch("B eigenbasis must be 2x2".into()));
    }
    let rho_b = rho.reduced(Subsystem::B);
    let diag = &(&basis.adjoint() * &rho_b) * basis;
    if diag[(0, 1)].norm() > tol::HERMITIAN
        || (&basis.adjoint() * basis).max_abs_diff(&ComplexMatrix::identity(2)) > tol::HERMITIAN
    {
        return Err(Error::Inconsistent(
            "supplied basis is not an orthonormal eigenbasis of ρ_B".into(),
        ));
    }
    let (mut lam, mut basis) = ([diag[(0, 0)].re, diag[(1, 1)].re], basis.clone());
    if lam[1] > lam[0] {
        lam.swap(0, 1);
        basis = ComplexMatrix::from_fn(2, 2, |r, c| basis[(r, 1 - c)]);
    }
    if lam[1] <= tol::RANK {
        return Err(Error::DegenerateMarginal);
    }

    let d = rho.dims().0;
    let m = rho.matrix();
    let phi = [basis.column(0), basis.column(1)];
    let action: [ComplexMatrix; 4] = std::array::from_fn(|idx| {
        let (i, j) = (idx / 2, idx % 2);
        // X = |φ_j><φ_i|, Tr_B[ρ (I ⊗ X)]_{a a'} = Σ ρ[(a b), (a' b')] X[b', b]
        let x = ComplexMatrix::outer(&phi[j], &phi[i]);
        let scale = 1.0 / (lam[i] * lam[j]).sqrt();
        ComplexMatrix::from_fn(d, d, |a, a2| {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..2 {
                for b2 in 0..2 {
                    acc += m[(a * 2 + b, a2 * 2 + b2)] * x[(b2, b)];
                }
            }
            acc * scale
        })
    });

    let output_basis = gell_mann_basis(d)?;
    let mut channel = ChannelBloch {
        output_dim: d,
        l_matrix: Vec::new(),
        offset: Vec::new(),
        marginal_eigenvalues: lam,
        marginal_basis: basis,
        action,
        output_basis,
    };
    let half_identity = ComplexMatrix::identity(2).scale_real(0.5);
    let offset = channel.output_coefficients(&half_identity);
    let columns: Vec<Vec<f64>> = ComplexMatrix::paulis()
        .iter()
        .map(|s| {
            let input = (&ComplexMatrix::identity(2) + s).scale_real(0.5);
            channel
                .output_coefficients(&input)
                .iter()
                .zip(&offset)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    channel.l_matrix = (0..offset.len())
        .map(|row| [columns[0][row], columns[1][row], columns[2][row]])
        .collect();
    channel.offset = offset;
    Ok(channel)
}

impl ChannelBloch {
    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn l_matrix(&self) -> &[[f64; 3]] {
        &self.l_matrix
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn marginal_eigenvalues(&self) -> [f64; 2] {
        self.marginal_eigenvalues
    }

    pub fn marginal_basis(&self) -> &ComplexMatrix {
        &self.marginal_basis
    }

    pub fn output_basis(&self) -> &GeneratorBasis {
        &self.output_basis
    }

    /// ρ_B written in the B' frame, `diag(λ1, λ2)`.
    pub fn marginal_in_frame(&self) -> ComplexMatrix {
        ComplexMatrix::diagonal(&self.marginal_eigenvalues)
    }

    /// `Λ(X)` for any operator X on B' by linearity.
    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.output_dim, self.output_dim);
        for i in 0..2 {
            for j in 0..2 {
                out = &out + &self.action[2 * i + j].scale(x[(i, j)]);
            }
        }
        out
    }

    fn output_coefficients(&self, x: &ComplexMatrix) -> Vec<f64> {
        bloch_of(&self.apply(x), &self.output_basis)
            .expect("output has the basis dimension")
            .0
    }

    /// `L r + l`.
    pub fn affine_image(&self, r: [f64; 3]) -> Vec<f64> {
        self.l_matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, l)| row[0] * r[0] + row[1] * r[1] + row[2] * r[2] + l)
            .collect()
    }

    /// `Lᵀ L`.
    pub fn ltl(&self) -> [[f64; 3]; 3] {
        let mut g = [[0.0; 3]; 3];
        for row in &self.l_matrix {
            for (i, gi) in g.iter_mut().enumerate() {
                for (j, gij) in gi.iter_mut().enumerate() {
                    *gij += row[i] * row[j];
                }
            }
        }
        g
    }

    /// Spectrum of `LᵀL`, descending.
    pub fn ltl_eigenvalues(&self) -> Vec<f64> {
        let g = self.ltl();
        let rows: Vec<Vec<f64>> = g.iter().map(|r| r.to_vec()).collect();
        symmetric_eigenvalues(&rows).expect("LᵀL is symmetric")
    }

    /// Top eigenvector of `LᵀL` as a unit 3-vector.
    pub fn ltl_top_eigenvector(&self) -> [f64; 3] {
        let g = self.ltl();
        let m = ComplexMatrix::from_fn(3, 3, |r, c| Complex64::new(g[r][c], 0.0));
        let v = hermitian_eig(&m).expect("LᵀL is symmetric").eigenvector(0);
        // a real symmetric eigenvector up to a global phase
        let pivot = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
        let phase = pivot.conj() / pivot.norm();
        let w: Vec<f64> = v.iter().map(|z| (z * phase).re).collect();
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        [w[0] / n, w[1] / n, w[2] / n]
    }

    /// Singular values of L, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        self.ltl_eigenvalues().into_iter().map(|x| x.max(0.0).sqrt()).collect()
    }

    /// `Σ_ij √(λ_i λ_j) Λ(|i><j|) ⊗ |φ_i><φ_j|`, which must equal ρ_AB.
    pub fn reassemble(&self) -> ComplexMatrix {
        let d = self.output_dim;
        let lam = self.marginal_eigenvalues;
        let phi = [self.marginal_basis.column(0), self.marginal_basis.column(1)];
        let mut out = ComplexMatrix::zeros(2 * d, 2 * d);
        for i in 0..2 {
            for j in 0..2 {
                let weight = (lam[i] * lam[j]).sqrt();
                let term = crate::matrix::tensor(
                    &self.action[2 * i + j],
                    &ComplexMatrix::outer(&phi[i], &phi[j]),
                );
                out = &out + &term.scale_real(weight);
            }
        }
        out
    }

    /// Replaces the offset; exists so tests can check what the closed form reads.
    #[doc(hidden)]
    pub fn with_offset(mut self, offset: Vec<f64>) -> Self {
        self.offset = offset;
        self
    }
}

/// `(4/d²) λ_max(LᵀL) S₂(ρ_B)`, reading only L and the spectrum of ρ_B.
pub fn lemma_value(channel: &ChannelBloch) -> f64 {
    let d = channel.output_dim as f64;
    let [l1, l2] = channel.marginal_eigenvalues;
    let s2_b = 4.0 * l1 * l2;
    let lambda_max = channel.ltl_eigenvalues()[0].max(0.0);
    4.0 / (d * d) * lambda_max * s2_b
}

/// Linear-entropy classical correlation `I₂^←` of a `d ⊗ 2` state, measuring B.
pub fn linear_classical_correlation(rho: &DensityMatrix) -> Result<f64> {
    require_qubit_b(rho)?;
    let rho_b = rho.reduced(Subsystem::B);
    let eig = hermitian_eig(&rho_b)?;
    if eig.clamped_eigenvalues()[1] <= tol::RANK {
        return Ok(0.0);
    }
    let channel = extract_channel_with_basis(rho, &eig.eigenvectors)?;
    let value = lemma_value(&channel);
    debug_assert!(
        (4.0 * channel.marginal_eigenvalues[0] * channel.marginal_eigenvalues[1] - linear_entropy(&rho_b)).abs() < 1e-9
    );
    Ok(value)
}
