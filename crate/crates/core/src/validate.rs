//! Randomized validation suite behind `qdiscord validate`.
//!
//! Trial `i` derives every state it needs from `substream_seed(seed, i)`, so a
//! summary depends only on `(trials, seed, tolerances)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::{extract_channel, linear_classical_correlation};
use crate::discord::{discord_rank2, koashi_winter_residual, monogamy_residual};
use crate::error::{Error, Result};
use crate::oracles::{decomposition_linear_cc, projective_classical_correlation, GridSpec};
use crate::state::random::substream_seed;
use crate::state::{make_random_rank2, random_unitary};

/// Random decompositions tried per state by the `I₂^←` bound check.
pub const DECOMPOSITION_TRIALS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub kw: f64,
    pub monogamy: f64,
    /// decomposition oracle above the closed-form `I₂^←`
    pub lemma: f64,
    /// closed-form `I₂^←` above the decomposition oracle
    pub lemma_attain: f64,
    /// projective oracle above the closed-form `I^←`
    pub projective: f64,
    pub local_unitary: f64,
    pub roundtrip: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            kw: 1e-8,
            monogamy: 1e-8,
            lemma: 1e-8,
            lemma_attain: 1e-4,
            projective: 1e-6,
            local_unitary: 1e-9,
            roundtrip: 1e-10,
        }
    }
}

impl Tolerances {
    /// Applies a `name=value` override, e.g. `kw=1e-15`.
    pub fn apply_override(&mut self, spec: &str) -> Result<()> {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Inconsistent(format!("tolerance override `{spec}` is not name=value")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Inconsistent(format!("tolerance `{key}` has a non-numeric value")))?;
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::OutOfDomain {
                name: "tolerance",
                value,
                domain: "[0, inf)",
            });
        }
        let slot = match key.trim() {
            "kw" => &mut self.kw,
            "monogamy" => &mut self.monogamy,
            "lemma" => &mut self.lemma,
            "lemma_attain" => &mut self.lemma_attain,
            "projective" => &mut self.projective,
            "local_unitary" => &mut self.local_unitary,
            "roundtrip" => &mut self.roundtrip,
            other => return Err(Error::Inconsistent(format!("unknown tolerance `{other}`"))),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationSummary {
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

const CHECKS: [&str; 7] = [
    "kw",
    "monogamy",
    "lemma",
    "lemma_attain",
    "projective",
    "local_unitary",
    "roundtrip",
];

fn tolerance_of(t: &Tolerances, name: &str) -> f64 {
    match name {
        "kw" => t.kw,
        "monogamy" => t.monogamy,
        "lemma" => t.lemma,
        "lemma_attain" => t.lemma_attain,
        "projective" => t.projective,
        "local_unitary" => t.local_unitary,
        _ => t.roundtrip,
    }
}

/// Residuals of one trial, in `CHECKS` order. Errors count as infinite.
fn trial_residuals(seed: u64, index: usize) -> [f64; 7] {
    let base = substream_seed(seed, index as u64);
    let sub = |k: u64| substream_seed(base, k);
    let run = || -> Result<[f64; 7]> {
        let rho = make_random_rank2(sub(0), 2)?;
        let rho3 = make_random_rank2(sub(1), 3)?;
        // lemma residuals alternate between d = 2 and d = 3 states
        let lemma_state = if index.is_multiple_of(2) { &rho } else { &rho3 };
        let lemma = linear_classical_correlation(lemma_state)?;
        let decomposition = decomposition_linear_cc(lemma_state, DECOMPOSITION_TRIALS, sub(2))?;

        let report = discord_rank2(&rho)?;
        let i_cc = report.i_cc.unwrap_or(f64::NAN);
        let projective = projective_classical_correlation(&rho, GridSpec::default())?;

        let moved = rho.local_unitary(&random_unitary(sub(3), 2), &random_unitary(sub(4), 2))?;
        let moved_report = discord_rank2(&moved)?;
        let lu = (moved_report.q_discord.unwrap_or(f64::NAN) - report.q_discord.unwrap_or(f64::NAN))
            .abs()
            .max((moved_report.i2_cc - report.i2_cc).abs());

        let d = 2 + index % 3;
        let rho_d = if d == 3 { rho3.clone() } else { make_random_rank2(sub(5), d)? };
        let roundtrip = extract_channel(&rho_d)?.reassemble().max_abs_diff(rho_d.matrix());

        Ok([
            koashi_winter_residual(&rho)?.abs(),
            monogamy_residual(&rho)?.abs(),
            (decomposition - lemma).max(0.0),
            (lemma - decomposition).max(0.0),
            (projective - i_cc).max(0.0),
            lu,
            roundtrip,
        ])
    };
    run().unwrap_or([f64::INFINITY; 7])
}

fn fold_max(acc: f64, r: f64) -> f64 {
    if r.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(r)
    }
}

/// Runs `trials` randomized trials. Results are combined in trial order.
pub fn run_validation(trials: usize, seed: u64, tolerances: &Tolerances) -> Result<ValidationSummary> {
    if trials == 0 {
        return Err(Error::OutOfDomain {
            name: "trials",
            value: 0.0,
            domain: ">= 1",
        });
    }
    let rows: Vec<[f64; 7]> = (0..trials).into_par_iter().map(|i| trial_residuals(seed, i)).collect();
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .enumerate()
        .map(|(k, &name)| {
            let max_residual = rows.iter().map(|r| r[k]).fold(0.0, fold_max);
            let tolerance = tolerance_of(tolerances, name);
            CheckResult {
                name: name.to_string(),
                max_residual,
                tolerance,
                // NaN fails
                pass: max_residual <= tolerance,
            }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    Ok(ValidationSummary {
        trials,
        seed,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let mut t = Tolerances::default();
        t.apply_override("kw=1e-15").unwrap();
        assert_eq!(t.kw, 1e-15);
        t.apply_override(" roundtrip = 2e-9").unwrap();
        assert_eq!(t.roundtrip, 2e-9);
        assert!(t.apply_override("kw").is_err());
        assert!(t.apply_override("nope=1").is_err());
        assert!(t.apply_override("kw=abc").is_err());
        assert!(t.apply_override("kw=-1").is_err());
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run_validation(12, 42, &Tolerances::default()).unwrap();
        assert!(a.pass, "{a:?}");
        let b = run_validation(12, 42, &Tolerances::default()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.checks.len(), CHECKS.len());
    }

    #[test]
    fn unreachable_tolerance_fails() {
        let mut t = Tolerances::default();
        t.apply_override("kw=1e-15").unwrap();
        let s = run_validation(10, 7, &t).unwrap();
        assert!(!s.pass);
        let kw = s.checks.iter().find(|c| c.name == "kw").unwrap();
        assert!(!kw.pass && kw.max_residual > 1e-15);
        assert!(s.checks.iter().filter(|c| c.name != "kw").all(|c| c.pass));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_validation(0, 1, &Tolerances::default()).is_err());
    }
}
