//! Classical correlation and discord of rank-≤2 two-qubit states.
//!
//! Purifying a rank-2 `ρ_AB` with a qubit C, the Koashi-Winter relation
//! `E_f(ρ_AC) + I^←(ρ_AB) = S(ρ_A)` and the linear-entropy monogamy relation
//! `τ(ρ_AC) + I₂^←(ρ_AB) = S₂(ρ_A)` combine with `E_f = f(τ)` on two qubits to
//!
//! ```text
//! I^←(ρ_AB) = S(ρ_A) - f(S₂(ρ_A) - I₂^←(ρ_AB))
//! Q^←(ρ_AB) = S(ρ_B) - S(ρ_AB) + f(S₂(ρ_A) - I₂^←(ρ_AB))
//! ```

use serde::{Deserialize, Serialize};

use crate::bloch::linear_classical_correlation;
use crate::error::{Error, Result};
use crate::matrix::Subsystem;
use crate::measures::{binary_entropy, eof_two_qubit, f_map, linear_entropy, tangle_two_qubit, von_neumann_entropy};
use crate::state::{purify_above, DensityMatrix, FamilySpec};
use crate::tol;

/// Every correlation quantity computed for one state.
///
/// `I_cc` and `Q_discord` come from the rank-2 closed form; they are `None`
/// (with `unavailable` giving the reason) when it does not apply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    #[serde(rename = "S_A")]
    pub s_a: f64,
    #[serde(rename = "S_B")]
    pub s_b: f64,
    #[serde(rename = "S_AB")]
    pub s_ab: f64,
    #[serde(rename = "S2_A")]
    pub s2_a: f64,
    #[serde(rename = "S2_B")]
    pub s2_b: f64,
    #[serde(rename = "I_mutual")]
    pub i_mutual: f64,
    #[serde(rename = "I2_cc")]
    pub i2_cc: f64,
    #[serde(rename = "I_cc")]
    pub i_cc: Option<f64>,
    #[serde(rename = "Q_discord")]
    pub q_discord: Option<f64>,
    pub rank: usize,
    pub family: Option<FamilySpec>,
    pub unavailable: Option<String>,
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.is_two_qubit() {
        Ok(())
    } else {
        let (da, db) = rho.dims();
        Err(Error::DimensionMismatch(format!("rank-2 closed form needs a 2x2 state, got {da}x{db}")))
    }
}

/// Rejects states of numerical rank three or more.
pub fn rank_gate(rho: &DensityMatrix) -> Result<usize> {
    let spectrum = rho.eigenvalues();
    let rank = spectrum.iter().filter(|&&l| l > tol::RANK).count();
    if rank > 2 {
        return Err(Error::RankTooHigh {
            rank,
            third_eigenvalue: spectrum[2],
        });
    }
    Ok(rank)
}

/// Clamps an argument of `f` back into [0, 1] if it overshoots by rounding.
fn f_argument(x: f64) -> Result<f64> {
    if !(-tol::F_ARGUMENT..=1.0 + tol::F_ARGUMENT).contains(&x) {
        return Err(Error::Inconsistent(format!("argument of f is {x}, outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `S₂(ρ_A) - I₂^←(ρ_AB)`, which equals `C²(ρ_AC)` for a rank-2 state.
fn residual_tangle(rho: &DensityMatrix) -> Result<f64> {
    let s2_a = linear_entropy(&rho.reduced(Subsystem::A));
    f_argument(s2_a - linear_classical_correlation(rho)?)
}

/// Von Neumann classical correlation `I^←` of a rank-≤2 two-qubit state.
pub fn classical_correlation_rank2(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    rank_gate(rho)?;
    let s_a = von_neumann_entropy(&rho.reduced(Subsystem::A));
    Ok((s_a - f_map(residual_tangle(rho)?)?).max(0.0))
}

/// Full report for a rank-≤2 two-qubit state.
pub fn discord_rank2(rho: &DensityMatrix) -> Result<CorrelationReport> {
    require_two_qubit(rho)?;
    let rank = rank_gate(rho)?;
    let mut report = base_report(rho)?;
    let f = f_map(f_argument(report.s2_a - report.i2_cc)?)?;
    report.i_cc = Some((report.s_a - f).max(0.0));
    report.q_discord = Some(report.s_b - report.s_ab + f);
    report.rank = rank;
    Ok(report)
}

fn base_report(rho: &DensityMatrix) -> Result<CorrelationReport> {
    let rho_a = rho.reduced(Subsystem::A);
    let rho_b = rho.reduced(Subsystem::B);
    let (s_a, s_b, s_ab) = (
        von_neumann_entropy(&rho_a),
        von_neumann_entropy(&rho_b),
        von_neumann_entropy(rho.matrix()),
    );
    Ok(CorrelationReport {
        s_a,
        s_b,
        s_ab,
        s2_a: linear_entropy(&rho_a),
        s2_b: linear_entropy(&rho_b),
        i_mutual: s_a + s_b - s_ab,
        i2_cc: linear_classical_correlation(rho)?,
        i_cc: None,
        q_discord: None,
        rank: rho.rank(),
        family: None,
        unavailable: None,
    })
}

/// Report for any `d ⊗ 2` state. The closed-form fields are left empty, with
/// a reason, when the state is not two-qubit or has rank above two.
pub fn analyze(rho: &DensityMatrix, family: Option<FamilySpec>) -> Result<CorrelationReport> {
    let mut report = match discord_rank2(rho) {
        Ok(r) => r,
        Err(e @ (Error::RankTooHigh { .. } | Error::DimensionMismatch(_))) => {
            let mut r = base_report(rho)?;
            r.unavailable = Some(e.to_string());
            r
        }
        Err(e) => return Err(e),
    };
    report.family = family;
    Ok(report)
}

/// Discord of `x|φ><φ| + (1-x)|ϕ><ϕ|`, `|φ> = sinθ|00> + cosθ|11>`,
/// `|ϕ> = sinη|01> + cosη|10>`, from its diagonal L = diag(L1, L2, L3):
///
/// ```text
/// Q = h(x sin²θ + (1-x) cos²η) - h(x) + f(L4 - max L_i² · L5)
/// ```
///
/// with `L4 = S₂(ρ_A)` and `L5 = S₂(ρ_B)`. Fails with
/// [`Error::DegenerateDenominator`] when ρ_B is (numerically) pure.
pub fn discord_rho2_closed_form(x: f64, theta: f64, eta: f64) -> Result<f64> {
    // reuse the constructor's domain checks
    crate::state::make_rho2(x, theta, eta)?;
    let (st, ct) = theta.sin_cos();
    let (se, ce) = eta.sin_cos();
    let y = 1.0 - x;
    let d1 = x * ct * ct + y * se * se;
    let d2 = x * st * st + y * ce * ce;
    let denom = d1 * d2;
    if denom <= 1e-12 {
        return Err(Error::DegenerateDenominator { value: denom });
    }
    let l1 = (x * st * ct + y * se * ce) / denom.sqrt();
    let l2 = (x * st * ct - y * se * ce) / denom.sqrt();
    let l3 = (x * x * st * st * ct * ct - y * y * se * se * ce * ce) / denom;
    let (s2t, s2e) = ((2.0 * theta).sin(), (2.0 * eta).sin());
    let l4 = 4.0 * x * y + x * x * s2t * s2t + y * y * s2e * s2e
        - 4.0 * x * y * (theta - eta).cos().powi(2)
        + 2.0 * x * y * s2t * s2e;
    let l5 = 4.0 * denom;
    let lmax = (l1 * l1).max(l2 * l2).max(l3 * l3);
    let arg = f_argument(l4 - lmax * l5)?;
    Ok(binary_entropy(d2.clamp(0.0, 1.0))? - binary_entropy(x)? + f_map(arg)?)
}

/// `E_f(ρ_AC) + I^←(ρ_AB) - S(ρ_A)` over the purification of ρ_AB.
pub fn koashi_winter_residual(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    rank_gate(rho)?;
    let rho_ac = purify_above(rho, tol::RANK).reduced_ac();
    let ef = if rho_ac.dims().1 == 1 { 0.0 } else { eof_two_qubit(&rho_ac)? };
    let s_a = von_neumann_entropy(&rho.reduced(Subsystem::A));
    Ok(ef + classical_correlation_rank2(rho)? - s_a)
}

/// `τ(ρ_AC) + I₂^←(ρ_AB) - S₂(ρ_A)` with `τ = C²` from the Wootters formula
/// on the purification's `ρ_AC`.
pub fn monogamy_residual(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    rank_gate(rho)?;
    let rho_ac = purify_above(rho, tol::RANK).reduced_ac();
    let tau = if rho_ac.dims().1 == 1 { 0.0 } else { tangle_two_qubit(&rho_ac)? };
    Ok(tau + linear_classical_correlation(rho)? - linear_entropy(&rho.reduced(Subsystem::A)))
}
