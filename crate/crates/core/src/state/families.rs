use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use serde::{Deserialize, Serialize};

use super::{make_random_rank2, DensityMatrix};
use crate::error::{Error, Result};
use crate::matrix::{tensor, Complex64, ComplexMatrix};
use crate::tol;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64, domain: &'static str) -> Result<()> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfDomain { name, value, domain })
    }
}

/// `¼(I + Σ c_j σ_j ⊗ σ_j)`.
pub fn make_bell_diagonal(c1: f64, c2: f64, c3: f64) -> Result<DensityMatrix> {
    // weights on Φ+, Φ-, Ψ+, Ψ-
    let weights = [
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
        (1.0 - c1 - c2 - c3) / 4.0,
    ];
    let min_eigenvalue = weights.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min_eigenvalue >= -tol::STATE) {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    let mut m = ComplexMatrix::identity(4);
    for (c, s) in [c1, c2, c3].into_iter().zip(ComplexMatrix::paulis()) {
        m = &m + &tensor(&s, &s).scale_real(c);
    }
    DensityMatrix::new((2, 2), m.scale_real(0.25))
}

/// `p|φ+><φ+| + (1-p)|00><00|` with `|φ+> = (|01> + |10>)/√2`.
pub fn make_horodecki(p: f64) -> Result<DensityMatrix> {
    check_range("p", p, 0.0, 1.0, "[0, 1]")?;
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = re(1.0 - p);
    m[(1, 1)] = re(p / 2.0);
    m[(1, 2)] = re(p / 2.0);
    m[(2, 1)] = re(p / 2.0);
    m[(2, 2)] = re(p / 2.0);
    DensityMatrix::new((2, 2), m)
}

/// The one-parameter family with an explicit 01/10 coherence of 1/6.
pub fn make_example1(x: f64) -> Result<DensityMatrix> {
    check_range("x", x, 0.0, 2.0, "[0, 2]")?;
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = re((2.0 - x) / 6.0);
    m[(1, 1)] = re((1.0 + x) / 6.0);
    m[(1, 2)] = re(1.0 / 6.0);
    m[(2, 1)] = re(1.0 / 6.0);
    m[(2, 2)] = re((1.0 + x) / 6.0);
    m[(3, 3)] = re((2.0 - x) / 6.0);
    DensityMatrix::new((2, 2), m)
}

/// `x|φ><φ| + (1-x)|ϕ><ϕ|` with `|φ> = sinθ|00> + cosθ|11>` and
/// `|ϕ> = sinη|01> + cosη|10>`.
pub fn make_rho2(x: f64, theta: f64, eta: f64) -> Result<DensityMatrix> {
    check_range("x", x, 0.0, 1.0, "[0, 1]")?;
    check_range("theta", theta, 0.0, TAU, "[0, 2π]")?;
    check_range("eta", eta, 0.0, TAU, "[0, 2π]")?;
    let phi = [re(theta.sin()), re(0.0), re(0.0), re(theta.cos())];
    let varphi = [re(0.0), re(eta.sin()), re(eta.cos()), re(0.0)];
    let m = &ComplexMatrix::projector(&phi).scale_real(x)
        + &ComplexMatrix::projector(&varphi).scale_real(1.0 - x);
    DensityMatrix::new((2, 2), m)
}

/// `(|00> + |11>)/√2`.
pub fn bell_phi_plus() -> DensityMatrix {
    let s = re(FRAC_1_SQRT_2);
    DensityMatrix::pure((2, 2), &[s, re(0.0), re(0.0), s]).expect("valid pure state")
}

/// A named state family together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    BellDiagonal { c1: f64, c2: f64, c3: f64 },
    Horodecki { p: f64 },
    Example1 { x: f64 },
    Rho2 { x: f64, theta: f64, eta: f64 },
    RandomRank2 { seed: u64, d_a: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            Self::BellDiagonal { c1, c2, c3 } => make_bell_diagonal(c1, c2, c3),
            Self::Horodecki { p } => make_horodecki(p),
            Self::Example1 { x } => make_example1(x),
            Self::Rho2 { x, theta, eta } => make_rho2(x, theta, eta),
            Self::RandomRank2 { seed, d_a } => make_random_rank2(seed, d_a),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::BellDiagonal { .. } => "bell_diagonal",
            Self::Horodecki { .. } => "horodecki",
            Self::Example1 { .. } => "example1",
            Self::Rho2 { .. } => "rho2",
            Self::RandomRank2 { .. } => "random_rank2",
        }
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use super::*;
    use crate::matrix::Subsystem;

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn bell_diagonal_examples() {
        let mixed = make_bell_diagonal(0.0, 0.0, 0.0).unwrap();
        assert!(mixed.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);

        let bell = make_bell_diagonal(1.0, -1.0, 1.0).unwrap();
        assert!(bell.matrix().max_abs_diff(bell_phi_plus().matrix()) < 1e-15);

        for lambda in [0.1, 0.3, 0.5, 0.9] {
            let rho = make_bell_diagonal(1.0, 1.0 - 2.0 * lambda, 2.0 * lambda - 1.0).unwrap();
            assert_eq!(rho.rank(), 2);
            let half = ComplexMatrix::identity(2).scale_real(0.5);
            assert!(rho.reduced(Subsystem::A).max_abs_diff(&half) < 1e-15);
            assert!(rho.reduced(Subsystem::B).max_abs_diff(&half) < 1e-15);
        }
        assert!(matches!(
            make_bell_diagonal(1.0, 1.0, 1.0),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn horodecki_examples() {
        let zero = make_horodecki(0.0).unwrap();
        assert!(zero.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0])) == 0.0);
        for p in [0.0, 0.2, 0.5, 1.0] {
            let rho = make_horodecki(p).unwrap();
            assert!(rho.rank() <= 2);
            let expected = ComplexMatrix::diagonal(&[1.0 - p / 2.0, p / 2.0]);
            assert!(rho.reduced(Subsystem::A).max_abs_diff(&expected) < 1e-15);
            assert!(rho.reduced(Subsystem::B).max_abs_diff(&expected) < 1e-15);
        }
        assert!(make_horodecki(1.5).is_err());
        assert!(make_horodecki(f64::NAN).is_err());
    }

    #[test]
    fn example1_spectrum() {
        assert_close(&make_example1(2.0).unwrap().eigenvalues(), &[2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0], 1e-14);
        assert_close(&make_example1(0.0).unwrap().eigenvalues(), &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0], 1e-14);
        for k in 0..=20 {
            let x = 0.1 * k as f64;
            let rho = make_example1(x).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
            let mut want = vec![(2.0 - x) / 6.0, (2.0 - x) / 6.0, (2.0 + x) / 6.0, x / 6.0];
            want.sort_by(|a, b| b.total_cmp(a));
            assert_close(&rho.eigenvalues(), &want, 1e-12);
            let half = ComplexMatrix::identity(2).scale_real(0.5);
            assert!(rho.reduced(Subsystem::B).max_abs_diff(&half) < 1e-15);
        }
        assert!(make_example1(-0.1).is_err());
    }

    #[test]
    fn rho2_contains_horodecki() {
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let a = make_rho2(1.0 - p, FRAC_PI_2, FRAC_PI_4).unwrap();
            let b = make_horodecki(p).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-14, "p = {p}");
        }
    }

    #[test]
    fn rho2_examples() {
        let theta = 0.7;
        let pure = make_rho2(1.0, theta, 1.1).unwrap();
        assert_eq!(pure.rank(), 1);
        let mixed = make_rho2(0.5, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert_close(&mixed.eigenvalues(), &[0.5, 0.5, 0.0, 0.0], 1e-15);
        assert!(make_rho2(0.5, 7.0, 0.0).is_err());
    }

    #[test]
    fn family_spec_serde_tags() {
        let spec = FamilySpec::Horodecki { p: 0.5 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"family":"horodecki","p":0.5}"#);
        let back: FamilySpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(spec.build().unwrap(), make_horodecki(0.5).unwrap());
    }
}
