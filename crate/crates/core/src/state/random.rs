//! Seeded random states.
//!
//! Every generator here is a xoshiro256** stream. Independent substreams for
//! numbered trials come from [`substream_seed`], which hashes `(seed, index)`
//! with the splitmix64 finalizer, so runs are reproducible on any platform.

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256StarStar;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};

pub type StateRng = Xoshiro256StarStar;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th substream of `seed`.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(index.wrapping_add(0x6A09_E667_F3BC_C909)))
}

pub fn rng(seed: u64) -> StateRng {
    StateRng::seed_from_u64(seed)
}

pub fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| gaussian_complex(rng)).collect()
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn normalize(v: &mut [Complex64]) {
    let n = dot(v, v).re.sqrt();
    v.iter_mut().for_each(|z| *z /= n);
}

/// Gram-Schmidt on the given vectors, in order.
pub fn orthonormalize(mut vectors: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    for k in 0..vectors.len() {
        for j in 0..k {
            let proj = dot(&vectors[j], &vectors[k]);
            let (head, tail) = vectors.split_at_mut(k);
            for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                *x -= proj * y;
            }
        }
        normalize(&mut vectors[k]);
    }
    vectors
}

/// Haar-random `n x n` unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(seed: u64, n: usize) -> ComplexMatrix {
    random_unitary_from(&mut rng(seed), n)
}

pub fn random_unitary_from(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let cols = orthonormalize((0..n).map(|_| gaussian_vector(rng, n)).collect());
    ComplexMatrix::from_fn(n, n, |r, c| cols[c][r])
}

/// Uniformly random pure state on `dA ⊗ dB`.
pub fn random_pure_state(seed: u64, dims: (usize, usize)) -> DensityMatrix {
    let mut rng = rng(seed);
    let psi = gaussian_vector(&mut rng, dims.0 * dims.1);
    DensityMatrix::pure(dims, &psi).expect("gaussian vector is non-zero")
}

/// Rank-2 state on `dA ⊗ 2`: `λ|v1><v1| + (1-λ)|v2><v2|` with λ uniform in
/// [0.05, 0.95] and `v1, v2` orthonormalized complex Gaussian vectors.
pub fn make_random_rank2(seed: u64, d_a: usize) -> Result<DensityMatrix> {
    if !(2..=4).contains(&d_a) {
        return Err(Error::OutOfDomain {
            name: "dA",
            value: d_a as f64,
            domain: "{2, 3, 4}",
        });
    }
    let mut rng = rng(seed);
    let n = 2 * d_a;
    let lambda: f64 = rng.gen_range(0.05..0.95);
    let v = orthonormalize(vec![gaussian_vector(&mut rng, n), gaussian_vector(&mut rng, n)]);
    let m = &ComplexMatrix::projector(&v[0]).scale_real(lambda)
        + &ComplexMatrix::projector(&v[1]).scale_real(1.0 - lambda);
    DensityMatrix::new((d_a, 2), m)
}
