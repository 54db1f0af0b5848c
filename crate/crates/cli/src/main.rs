use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdiscord::bloch::linear_classical_correlation;
use qdiscord::discord::{analyze, discord_rho2_closed_form, CorrelationReport};
use qdiscord::state::{DensityMatrix, FamilySpec, StateJson};
use qdiscord::validate::{run_validation, Tolerances};
use qdiscord::Error;

mod format;

use format::{csv_number, json_12_digits};

#[derive(Parser)]
#[command(name = "qdiscord", version, about = "Quantum discord and classical correlation of d x 2 states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the correlation report of one state as JSON.
    Compute(ComputeArgs),
    /// Evaluate a family over a parameter range and write CSV.
    Sweep(SweepArgs),
    /// Run the randomized validation suite.
    Validate(ValidateArgs),
    /// State utilities.
    State {
        #[command(subcommand)]
        command: StateCommand,
    },
}

#[derive(Subcommand)]
enum StateCommand {
    /// Print a family member in the state JSON schema.
    Show(FamilyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FamilyName {
    BellDiagonal,
    Horodecki,
    Example1,
    Rho2,
    RandomRank2,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    /// Bell-diagonal correlations as `c1,c2,c3`.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Dimension of A for random_rank2.
    #[arg(long, default_value_t = 2)]
    da: usize,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// State JSON file, or `-` for stdin.
    #[arg(long, conflicts_with = "family")]
    input: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Swept parameter; defaults to `p` for horodecki and `x` otherwise.
    #[arg(long)]
    param: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long)]
    steps: usize,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol")]
    tol: Vec<String>,
}

/// Failure reported on stderr with the given exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(2, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn need(v: Option<f64>, flag: &str, family: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| usage(format!("family {family} needs --{flag}")))
}

fn parse_c(s: &str) -> Result<(f64, f64, f64), Failure> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--c expects three comma-separated numbers, got `{s}`")))?;
    match parts[..] {
        [c1, c2, c3] => Ok((c1, c2, c3)),
        _ => Err(usage(format!("--c expects three comma-separated numbers, got `{s}`"))),
    }
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Failure> {
        let family = self.family.ok_or_else(|| usage("--family is required"))?;
        Ok(match family {
            FamilyName::BellDiagonal => {
                let c = self.c.as_deref().ok_or_else(|| usage("family bell_diagonal needs --c"))?;
                let (c1, c2, c3) = parse_c(c)?;
                FamilySpec::BellDiagonal { c1, c2, c3 }
            }
            FamilyName::Horodecki => FamilySpec::Horodecki {
                p: need(self.p, "p", "horodecki")?,
            },
            FamilyName::Example1 => FamilySpec::Example1 {
                x: need(self.x, "x", "example1")?,
            },
            FamilyName::Rho2 => FamilySpec::Rho2 {
                x: need(self.x, "x", "rho2")?,
                theta: need(self.theta, "theta", "rho2")?,
                eta: need(self.eta, "eta", "rho2")?,
            },
            FamilyName::RandomRank2 => FamilySpec::RandomRank2 {
                seed: self.seed.ok_or_else(|| usage("family random_rank2 needs --seed"))?,
                d_a: self.da,
            },
        })
    }
}

fn read_input(source: &str) -> Result<String, Failure> {
    if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(source).map_err(|e| usage(format!("reading {source}: {e}")))
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let v = serde_json::to_value(value).map_err(|e| usage(e.to_string()))?;
    println!("{}", json_12_digits(v));
    Ok(())
}

fn cmd_compute(args: &ComputeArgs) -> Result<(), Failure> {
    let report = match &args.input {
        Some(source) => analyze(&DensityMatrix::from_json_str(&read_input(source)?)?, None)?,
        None => {
            let spec = args.family.spec()?;
            analyze(&spec.build()?, Some(spec))?
        }
    };
    print_json(&report)
}

fn cmd_state_show(args: &FamilyArgs) -> Result<(), Failure> {
    let rho = args.spec()?.build()?;
    let s = serde_json::to_string(&StateJson::from_state(&rho)).map_err(|e| usage(e.to_string()))?;
    println!("{s}");
    Ok(())
}

/// ρ₂ closed form; a degenerate denominator means ρ_B is pure, so the state
/// is a product and has no discord.
fn rho2_closed(x: f64, theta: f64, eta: f64) -> Result<f64, Failure> {
    match discord_rho2_closed_form(x, theta, eta) {
        Ok(q) => Ok(q),
        Err(Error::DegenerateDenominator { .. }) => Ok(0.0),
        Err(e) => Err(e.into()),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(csv_number).unwrap_or_default()
}

fn report_columns(r: &CorrelationReport) -> Vec<String> {
    vec![
        csv_number(r.s_a),
        csv_number(r.s_b),
        csv_number(r.s_ab),
        csv_number(r.i_mutual),
        opt(r.i_cc),
        opt(r.q_discord),
    ]
}

fn sweep_row(family: FamilyName, base: &FamilyArgs, param: &str, value: f64) -> Result<String, Failure> {
    let mut args = base.clone();
    let slot = match (family, param) {
        (FamilyName::Example1, "x") | (FamilyName::Rho2, "x") => &mut args.x,
        (FamilyName::Horodecki, "p") => &mut args.p,
        (FamilyName::Rho2, "theta") => &mut args.theta,
        (FamilyName::Rho2, "eta") => &mut args.eta,
        _ => return Err(usage(format!("parameter `{param}` cannot be swept for this family"))),
    };
    *slot = Some(value);
    let spec = args.spec()?;
    let rho = spec.build()?;
    let mut cols = vec![csv_number(value)];
    match spec {
        FamilySpec::Example1 { x } => {
            cols.push(csv_number(linear_classical_correlation(&rho)?));
            cols.push(csv_number((1.0 / 9.0f64).max((1.0 - 2.0 * x).powi(2) / 9.0)));
        }
        FamilySpec::Horodecki { p } => {
            cols.extend(report_columns(&analyze(&rho, None)?));
            cols.push(csv_number(rho2_closed(1.0 - p, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_4)?));
        }
        FamilySpec::Rho2 { x, theta, eta } => {
            cols.extend(report_columns(&analyze(&rho, None)?));
            cols.push(csv_number(rho2_closed(x, theta, eta)?));
        }
        _ => unreachable!("sweep families are filtered above"),
    }
    Ok(cols.join(","))
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let family = args.family.family.ok_or_else(|| usage("--family is required"))?;
    let (default_param, rest) = match family {
        FamilyName::Example1 => ("x", "I2_cc,I2_cc_closed"),
        FamilyName::Horodecki => ("p", "S_A,S_B,S_AB,I_mutual,I_cc,Q_discord,Q_closed_form"),
        FamilyName::Rho2 => ("x", "S_A,S_B,S_AB,I_mutual,I_cc,Q_discord,Q_closed_form"),
        _ => return Err(usage("sweep supports example1, horodecki and rho2")),
    };
    let param = args.param.as_deref().unwrap_or(default_param);
    if args.steps < 2 {
        return Err(usage("--steps must be at least 2"));
    }
    if !(args.from < args.to) {
        return Err(usage("--from must be less than --to"));
    }
    let mut out = format!("{param},{rest}\n");
    let last = (args.steps - 1) as f64;
    for k in 0..args.steps {
        let value = if k + 1 == args.steps {
            args.to
        } else {
            args.from + (args.to - args.from) * (k as f64 / last)
        };
        out.push_str(&sweep_row(family, &args.family, param, value)?);
        out.push('\n');
    }
    match &args.out {
        Some(path) => fs::write(path, out).map_err(|e| usage(format!("writing {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(out.as_bytes())
            .map_err(|e| usage(format!("writing stdout: {e}"))),
    }
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), Failure> {
    let mut tolerances = Tolerances::default();
    for t in &args.tol {
        tolerances.apply_override(t)?;
    }
    let start = Instant::now();
    let summary = run_validation(args.trials, args.seed, &tolerances)?;
    eprintln!("validate: {} trials in {:.2?}", args.trials, start.elapsed());
    print_json(&summary)?;
    if summary.pass {
        Ok(())
    } else {
        let failed: Vec<&str> = summary.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        Err(Failure(1, format!("validation failed: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Validate(a) => cmd_validate(a),
        Command::State {
            command: StateCommand::Show(a),
        } => cmd_state_show(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
