//! Brute-force references for the closed forms.
//!
//! * Projective measurements on B, optimized over the Bloch sphere, give a
//!   lower bound on the von Neumann classical correlation `I^←`.
//! * Pure-state decompositions of ρ_B pushed through the extracted channel give
//!   a lower bound on the linear-entropy correlation `I₂^←`.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rayon::prelude::*;

use crate::bloch::{extract_channel, ChannelBloch};
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix, Subsystem};
use crate::measures::{linear_entropy, mutual_information, von_neumann_entropy};
use crate::state::random::{rng, substream_seed};
use crate::state::DensityMatrix;

/// A two-outcome projective measurement along `n(θ, φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetting {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementSetting {
    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `P± = (I ± n·σ)/2`.
    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        let n = self.direction();
        let mut ns = ComplexMatrix::zeros(2, 2);
        for (k, s) in ComplexMatrix::paulis().iter().enumerate() {
            ns = &ns + &s.scale_real(n[k]);
        }
        let id = ComplexMatrix::identity(2);
        [(&id + &ns).scale_real(0.5), (&id - &ns).scale_real(0.5)]
    }
}

/// Coarse grid over (θ, φ): θ_i = π i / theta_steps for i = 0..=theta_steps,
/// φ_j = 2π j / phi_steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub theta_steps: usize,
    pub phi_steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            theta_steps: 32,
            phi_steps: 64,
        }
    }
}

impl GridSpec {
    pub fn doubled(self) -> Self {
        Self {
            theta_steps: 2 * self.theta_steps,
            phi_steps: 2 * self.phi_steps,
        }
    }

    fn check(&self) -> Result<()> {
        if self.theta_steps < 32 || self.phi_steps < 64 {
            return Err(Error::OutOfDomain {
                name: "grid",
                value: (self.theta_steps * self.phi_steps) as f64,
                domain: "at least 64 (φ) x 32 (θ)",
            });
        }
        Ok(())
    }

    fn spacing(&self) -> (f64, f64) {
        (PI / self.theta_steps as f64, TAU / self.phi_steps as f64)
    }

    fn points(&self) -> Vec<MeasurementSetting> {
        let (dt, dp) = self.spacing();
        (0..=self.theta_steps)
            .flat_map(|i| {
                (0..self.phi_steps).map(move |j| MeasurementSetting {
                    theta: dt * i as f64,
                    phi: dp * j as f64,
                })
            })
            .collect()
    }
}

const STARTS: usize = 5;
const SWEEPS: usize = 60;
const ANGLE_TOL: f64 = 1e-10;

/// Conditional-entropy objective `S(ρ_A) - Σ p± S(ρ_A^±)` of a fixed state.
struct ProjectiveObjective {
    s_a: f64,
    /// `M_{bb'}[a, a'] = ρ[(a b), (a' b')]`, index `2 b + b'`.
    blocks: [ComplexMatrix; 4],
}

impl ProjectiveObjective {
    fn new(rho: &DensityMatrix) -> Self {
        let (da, _) = rho.dims();
        let m = rho.matrix();
        let blocks = std::array::from_fn(|idx| {
            let (b, b2) = (idx / 2, idx % 2);
            ComplexMatrix::from_fn(da, da, |a, a2| m[(a * 2 + b, a2 * 2 + b2)])
        });
        Self {
            s_a: von_neumann_entropy(&rho.reduced(Subsystem::A)),
            blocks,
        }
    }

    fn value(&self, setting: MeasurementSetting) -> f64 {
        let da = self.blocks[0].rows();
        let mut conditional = 0.0;
        for p in setting.projectors() {
            // Tr_B[ρ (I ⊗ P)] = Σ M_{bb'} P[b', b]
            let mut out = ComplexMatrix::zeros(da, da);
            for b in 0..2 {
                for b2 in 0..2 {
                    out = &out + &self.blocks[2 * b + b2].scale(p[(b2, b)]);
                }
            }
            let prob = out.trace().re;
            if prob > 1e-14 {
                conditional += prob * von_neumann_entropy(&out.scale_real(1.0 / prob).hermitian_part());
            }
        }
        self.s_a - conditional
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > ANGLE_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coordinate ascent around `start`, each angle by golden section over one
/// grid cell either side of the current point.
fn refine(obj: &ProjectiveObjective, start: MeasurementSetting, value: f64, grid: &GridSpec) -> (MeasurementSetting, f64) {
    let (dt, dp) = grid.spacing();
    let (mut best, mut best_value) = (start, value);
    for _ in 0..SWEEPS {
        let prev = best;
        let (t, vt) = golden_max(
            |t| obj.value(MeasurementSetting { theta: t, phi: best.phi }),
            best.theta - dt,
            best.theta + dt,
        );
        if vt > best_value {
            best = MeasurementSetting { theta: t, phi: best.phi };
            best_value = vt;
        }
        let (p, vp) = golden_max(
            |p| obj.value(MeasurementSetting { theta: best.theta, phi: p }),
            best.phi - dp,
            best.phi + dp,
        );
        if vp > best_value {
            best = MeasurementSetting { theta: best.theta, phi: p };
            best_value = vp;
        }
        if (best.theta - prev.theta).abs() < ANGLE_TOL && (best.phi - prev.phi).abs() < ANGLE_TOL {
            break;
        }
    }
    (best, best_value)
}

/// Best projective measurement found and its objective value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveOptimum {
    pub setting: MeasurementSetting,
    pub value: f64,
}

/// Maximizes `S(ρ_A) - Σ p_i S(ρ_A^i)` over projective measurements on B:
/// exact maximum over the grid, then refinement from the five best points.
pub fn projective_optimum(rho: &DensityMatrix, grid: GridSpec) -> Result<ProjectiveOptimum> {
    grid.check()?;
    if rho.dims().1 != 2 {
        return Err(Error::DimensionMismatch("measured subsystem B must be a qubit".into()));
    }
    let obj = ProjectiveObjective::new(rho);
    let points = grid.points();
    let values: Vec<f64> = points.par_iter().map(|&s| obj.value(s)).collect();

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    let mut best = ProjectiveOptimum {
        setting: points[order[0]],
        value: values[order[0]],
    };
    for &i in order.iter().take(STARTS) {
        let (setting, value) = refine(&obj, points[i], values[i], &grid);
        if value > best.value {
            best = ProjectiveOptimum { setting, value };
        }
    }
    Ok(best)
}

/// Projective lower bound on `I^←(ρ_AB)`.
pub fn projective_classical_correlation(rho: &DensityMatrix, grid: GridSpec) -> Result<f64> {
    Ok(projective_optimum(rho, grid)?.value.max(0.0))
}

/// `I(ρ_AB)` minus the projective classical correlation; an upper bound on `Q^←`.
pub fn projective_discord(rho: &DensityMatrix, grid: GridSpec) -> Result<f64> {
    Ok(mutual_information(rho) - projective_classical_correlation(rho, grid)?)
}

/// Pure-state decomposition `ρ_B = Σ p_j (I + r_j·σ)/2` in the B' frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub elements: Vec<(f64, [f64; 3])>,
}

fn add(a: [f64; 3], b: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Parameters `t- < 0 < t+` where `point + t u` leaves the unit ball.
fn chord(point: [f64; 3], u: [f64; 3]) -> (f64, f64) {
    let b = dot3(point, u);
    let disc = (b * b + 1.0 - dot3(point, point)).max(0.0).sqrt();
    (-b - disc, -b + disc)
}

/// Splits `point` into two sphere points along `u`, weighted so the mean is `point`.
fn split_on_sphere(point: [f64; 3], u: [f64; 3], weight: f64, out: &mut Vec<(f64, [f64; 3])>) {
    let (tm, tp) = chord(point, u);
    let span = tp - tm;
    out.push((weight * tp / span, add(point, u, tm)));
    out.push((weight * -tm / span, add(point, u, tp)));
}

fn random_direction(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = dot3(v, v).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

impl Decomposition {
    /// Two elements on the line through `r_b` along `u`.
    pub fn along(r_b: [f64; 3], u: [f64; 3]) -> Self {
        let mut elements = Vec::with_capacity(2);
        split_on_sphere(r_b, u, 1.0, &mut elements);
        Self { elements }
    }

    /// Random decomposition with `size` ∈ {2, 3, 4} elements.
    pub fn random(r_b: [f64; 3], size: usize, rng: &mut impl Rng) -> Self {
        let mut elements = Vec::with_capacity(size);
        match size {
            2 => split_on_sphere(r_b, random_direction(rng), 1.0, &mut elements),
            3 => {
                // one sphere point, one interior point on the chord, then split that
                let u = random_direction(rng);
                let (tm, tp) = chord(r_b, u);
                let t = tp * rng.gen_range(0.05..0.95);
                let (w_sphere, w_inner) = (t / (t - tm), -tm / (t - tm));
                elements.push((w_sphere, add(r_b, u, tm)));
                split_on_sphere(add(r_b, u, t), random_direction(rng), w_inner, &mut elements);
            }
            _ => {
                let u = random_direction(rng);
                let (tm, tp) = chord(r_b, u);
                let (a, b) = (tm * rng.gen_range(0.05..0.95), tp * rng.gen_range(0.05..0.95));
                let (wa, wb) = (b / (b - a), -a / (b - a));
                split_on_sphere(add(r_b, u, a), random_direction(rng), wa, &mut elements);
                split_on_sphere(add(r_b, u, b), random_direction(rng), wb, &mut elements);
            }
        }
        Self { elements }
    }

    /// Largest violation of `Σ p = 1`, `Σ p r = r_B`, `|r_j| = 1`, `p_j ≥ 0`.
    pub fn constraint_error(&self, r_b: [f64; 3]) -> f64 {
        let total: f64 = self.elements.iter().map(|(p, _)| p).sum();
        let mean = self
            .elements
            .iter()
            .fold([0.0; 3], |acc, &(p, r)| add(acc, r, p));
        let mut err = (total - 1.0).abs();
        for k in 0..3 {
            err = err.max((mean[k] - r_b[k]).abs());
        }
        for &(p, r) in &self.elements {
            err = err.max((dot3(r, r).sqrt() - 1.0).abs()).max((-p).max(0.0));
        }
        err
    }

    /// `S₂[Λ(ρ_B)] - Σ p_j S₂[Λ(ψ_j)]`, evaluated on the channel's output matrices.
    pub fn linear_entropy_gain(&self, channel: &ChannelBloch) -> f64 {
        let before = linear_entropy(&channel.apply(&channel.marginal_in_frame()));
        let after: f64 = self
            .elements
            .iter()
            .map(|&(p, r)| p * linear_entropy(&channel.apply(&qubit_state(r))))
            .sum();
        before - after
    }
}

fn qubit_state(r: [f64; 3]) -> ComplexMatrix {
    let half = 0.5;
    ComplexMatrix::from_rows(&[
        vec![Complex64::new(half * (1.0 + r[2]), 0.0), Complex64::new(half * r[0], -half * r[1])],
        vec![Complex64::new(half * r[0], half * r[1]), Complex64::new(half * (1.0 - r[2]), 0.0)],
    ])
    .expect("2x2")
}

/// Best decomposition gain over `trials` random 2-, 3- and 4-element
/// decompositions, optionally including the two-element one aligned with the
/// top eigenvector of `LᵀL`.
pub fn decomposition_search(rho: &DensityMatrix, trials: usize, seed: u64, aligned: bool) -> Result<f64> {
    let channel = extract_channel(rho)?;
    let [l1, l2] = channel.marginal_eigenvalues();
    let r_b = [0.0, 0.0, l1 - l2];
    let mut best = f64::NEG_INFINITY;
    if aligned {
        let e = channel.ltl_top_eigenvector();
        best = Decomposition::along(r_b, e).linear_entropy_gain(&channel);
    }
    let gains: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng(substream_seed(seed, i as u64));
            Decomposition::random(r_b, 2 + i % 3, &mut rng).linear_entropy_gain(&channel)
        })
        .collect();
    Ok(gains.into_iter().fold(best, f64::max).max(0.0))
}

/// Decomposition lower bound on `I₂^←` including the aligned candidate.
pub fn decomposition_linear_cc(rho: &DensityMatrix, trials: usize, seed: u64) -> Result<f64> {
    decomposition_search(rho, trials, seed, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::linear_classical_correlation;
    use crate::discord::{classical_correlation_rank2, discord_rank2};
    use crate::state::{make_bell_diagonal, make_example1, make_horodecki, make_random_rank2};
    use approx::assert_abs_diff_eq;

    #[test]
    fn projectors_are_complete_and_idempotent() {
        let s = MeasurementSetting { theta: 0.7, phi: 2.1 };
        let [p, m] = s.projectors();
        assert!((&p + &m).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        assert!((&p * &p).max_abs_diff(&p) < 1e-12);
        assert!((&m * &m).max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn projective_examples() {
        let product = DensityMatrix::product(
            &ComplexMatrix::diagonal(&[0.7, 0.3]),
            &ComplexMatrix::diagonal(&[0.4, 0.6]),
        )
        .unwrap();
        let g = GridSpec::default();
        assert_abs_diff_eq!(projective_classical_correlation(&product, g).unwrap(), 0.0, epsilon = 1e-12);
        let bell = make_bell_diagonal(1.0, -1.0, 1.0).unwrap();
        assert_abs_diff_eq!(projective_classical_correlation(&bell, g).unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(projective_discord(&bell, g).unwrap(), 1.0, epsilon = 1e-10);
        let hor = make_horodecki(0.5).unwrap();
        let theorem = classical_correlation_rank2(&hor).unwrap();
        assert_abs_diff_eq!(projective_classical_correlation(&hor, g).unwrap(), theorem, epsilon = 1e-4);
        let rho1 = make_example1(2.0).unwrap();
        assert_abs_diff_eq!(projective_discord(&rho1, g).unwrap(), 5.0 / 3.0 - 3f64.log2(), epsilon = 1e-4);
    }

    #[test]
    fn grid_must_be_fine_enough() {
        let hor = make_horodecki(0.5).unwrap();
        let coarse = GridSpec { theta_steps: 8, phi_steps: 16 };
        assert!(projective_classical_correlation(&hor, coarse).is_err());
    }

    #[test]
    fn classical_quantum_state_has_zero_projective_discord() {
        let a0 = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let a1 = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let m = &crate::matrix::tensor(&a0, &ComplexMatrix::diagonal(&[1.0, 0.0])).scale_real(0.3)
            + &crate::matrix::tensor(&a1, &ComplexMatrix::diagonal(&[0.0, 1.0])).scale_real(0.7);
        let rho = DensityMatrix::new((2, 2), m).unwrap();
        assert!(projective_discord(&rho, GridSpec::default()).unwrap() <= 1e-6);
    }

    #[test]
    fn oracle_sandwich_and_refinement() {
        for seed in 0..20 {
            let rho = make_random_rank2(seed, 2).unwrap();
            let g = GridSpec::default();
            let oracle = projective_classical_correlation(&rho, g).unwrap();
            let fine = projective_classical_correlation(&rho, g.doubled()).unwrap();
            assert!(fine >= oracle - 1e-12);
            let r = discord_rank2(&rho).unwrap();
            assert!(r.i_cc.unwrap() >= oracle - 1e-6);
            assert!(projective_discord(&rho, g).unwrap() >= r.q_discord.unwrap() - 1e-6);
        }
    }

    #[test]
    fn decompositions_satisfy_constraints() {
        let mut rng = rng(4);
        for size in 2..=4 {
            for _ in 0..200 {
                let r_b = [0.1, -0.2, 0.35];
                let d = Decomposition::random(r_b, size, &mut rng);
                assert_eq!(d.elements.len(), size);
                assert!(d.constraint_error(r_b) < 1e-10);
            }
        }
        let d = Decomposition::along([0.0, 0.0, 0.6], [1.0, 0.0, 0.0]);
        assert!(d.constraint_error([0.0, 0.0, 0.6]) < 1e-12);
    }

    #[test]
    fn decomposition_examples() {
        let rho1 = make_example1(2.0).unwrap();
        assert_abs_diff_eq!(decomposition_linear_cc(&rho1, 300, 1).unwrap(), 1.0, epsilon = 1e-6);
        let hor = make_horodecki(0.5).unwrap();
        assert_abs_diff_eq!(decomposition_linear_cc(&hor, 300, 1).unwrap(), 0.25, epsilon = 1e-6);
        assert_eq!(
            decomposition_linear_cc(&make_horodecki(0.0).unwrap(), 10, 1).unwrap_err(),
            Error::DegenerateMarginal
        );
    }

    #[test]
    fn decomposition_is_bounded_by_lemma() {
        for seed in 0..30 {
            let d_a = 2 + (seed as usize % 3);
            let rho = make_random_rank2(seed, d_a).unwrap();
            let lemma = linear_classical_correlation(&rho).unwrap();
            let random_only = decomposition_search(&rho, 300, seed, false).unwrap();
            let with_aligned = decomposition_linear_cc(&rho, 300, seed).unwrap();
            assert!(random_only <= lemma + 1e-8);
            assert!(with_aligned <= lemma + 1e-8);
            assert_abs_diff_eq!(with_aligned, lemma, epsilon = 1e-6);
            // random search alone gets reasonably close
            assert!(random_only >= 0.8 * lemma - 1e-9, "seed {seed}: {random_only} vs {lemma}");
        }
    }
}
