//! `oddzeta`: determinants, traces, residues and property suites from the shell.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use oddzeta::fixtures::DEFAULT_SEED;
use oddzeta::suites::Suite;
use oddzeta::symbolcalc::{DEFAULT_BANDWIDTH, DEFAULT_DEPTH};
use oddzeta::zetacontinuation::ContinuationParams;
use oddzeta::{Cplx, Error, Real};
use serde::Serialize;

use report::Format;

#[derive(Debug, Parser)]
#[command(name = "oddzeta", version, about = "Zeta-regularized and symmetrized determinants of odd-class operators")]
struct Cli {
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Args)]
pub struct Settings {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Expansion depth K of the zeta continuation.
    #[arg(long = "k-expand", global = true, default_value_t = ContinuationParams::default().k_expand)]
    k_expand: usize,
    /// Last directly summed index of the continuation remainder.
    #[arg(long = "n-tail", global = true, default_value_t = ContinuationParams::default().n_tail)]
    n_tail: u64,
    /// Radius of the Laurent sampling circle around s = 0.
    #[arg(long = "fit-radius", global = true, default_value_t = ContinuationParams::default().r_fit)]
    fit_radius: Real,
    /// Symbol expansion depth J.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Fourier bandwidth N of symbol coefficients.
    #[arg(long, global = true, default_value_t = DEFAULT_BANDWIDTH)]
    bandwidth: usize,
    /// Tolerance for the pass column of residue reports.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: Real,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// log Det and log Det^sym of a model operator.
    Det {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_parser = radians)]
        theta: Real,
        /// Second angle: report log Det^sym(theta) − log Det^sym(theta2).
        #[arg(long, value_parser = radians)]
        theta2: Option<Real>,
        #[arg(long)]
        sym: bool,
    },
    /// Laurent data of TR(A^s) at 0 and continued values.
    Zeta {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_parser = radians)]
        theta: Real,
        /// Evaluation point `re` or `re,im`; repeatable.
        #[arg(long = "s", value_parser = complex)]
        s: Vec<Cplx>,
    },
    /// Weighted trace: finite part at 0 of TR(W Q^s).
    Trace {
        /// The weight operator Q.
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_parser = radians)]
        theta: Real,
        #[arg(long, value_enum, default_value_t = Weight::Symlog)]
        weight: Weight,
        /// Operator whose logarithm is the weight (defaults to --op).
        #[arg(long)]
        weight_op: Option<PathBuf>,
        /// Cut of the weight logarithm (defaults to --theta).
        #[arg(long, value_parser = radians)]
        weight_theta: Option<Real>,
        #[arg(long)]
        sym: bool,
    },
    /// Wodzicki residue, residue coboundary or anomaly integrand.
    #[command(group(ArgGroup::new("mode").required(true).args(["symbolfile", "coboundary", "anomaly"])))]
    Residue {
        #[arg(long)]
        symbolfile: Option<PathBuf>,
        #[arg(long, num_args = 3, value_names = ["Q", "A", "B"])]
        coboundary: Option<Vec<PathBuf>>,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        anomaly: Option<Vec<PathBuf>>,
        /// Cut of log Q, or theta_A for --anomaly.
        #[arg(long, value_parser = radians)]
        theta: Option<Real>,
        /// theta_B for --anomaly.
        #[arg(long, value_parser = radians)]
        theta2: Option<Real>,
        #[arg(long)]
        symmetrized: bool,
        /// Simpson intervals on t ∈ [0, 1] (even).
        #[arg(long, default_value_t = 8)]
        quad: usize,
    },
    /// Symbol algebra: compose, complex power or logarithm.
    Symbol {
        #[arg(value_enum)]
        op: SymbolOp,
        #[arg(long, required = true)]
        symbolfile: Vec<PathBuf>,
        #[arg(long, value_parser = radians)]
        theta: Option<Real>,
        #[arg(long = "s", value_parser = complex)]
        s: Option<Cplx>,
        /// Also write the result in the symbol schema to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run a property suite over the built-in fixtures; exit 1 on any failure.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Re-run with doubled K, N_tail, J and N and check stability.
        #[arg(long)]
        double: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    One,
    Log,
    Symlog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolOp {
    Compose,
    Power,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteArg {
    Trace,
    Det,
    Sign,
    Mult,
    Symbols,
    All,
}

impl SuiteArg {
    fn suite(self) -> Option<Suite> {
        match self {
            SuiteArg::Trace => Some(Suite::Trace),
            SuiteArg::Det => Some(Suite::Det),
            SuiteArg::Sign => Some(Suite::Sign),
            SuiteArg::Mult => Some(Suite::Mult),
            SuiteArg::Symbols => Some(Suite::Symbols),
            SuiteArg::All => None,
        }
    }
}

fn radians(s: &str) -> Result<Real, String> {
    let t = s.trim().to_ascii_lowercase();
    if t.ends_with("deg") || t.ends_with('°') || t.ends_with('d') {
        return Err("angles are radians; degrees are not accepted".into());
    }
    match t.parse::<Real>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("not a finite angle in radians: {s:?}")),
    }
}

fn complex(s: &str) -> Result<Cplx, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<Real>().map_err(|_| format!("not a number: {p:?}"));
    match parts.as_slice() {
        [re] => Ok(Cplx::new(num(re)?, 0.0)),
        [re, im] => Ok(Cplx::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got {s:?}")),
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 schema or invalid input, 3 angle not Agmon, 4 unstable fit,
    /// 5 symbol or expansion depth insufficient. Other library errors are
    /// input errors too.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                Error::NotAgmon { .. } | Error::NotPrincipal { .. } => 3,
                Error::FitUnstable(_) => 4,
                Error::DepthInsufficient { .. } | Error::ExpansionDepthInsufficient { .. } => 5,
                _ => 2,
            },
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Io(_) => "Io".into(),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
            }
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

fn seed() -> Result<u64, CliError> {
    match std::env::var("ODDZETA_SEED") {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("ODDZETA_SEED is not an unsigned integer: {v:?}")).into()),
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let s = &cli.settings;
    let report = match cli.command {
        Command::Det { op, theta, theta2, sym } => commands::det(s, &op, theta, theta2, sym)?,
        Command::Zeta { op, theta, s: points } => commands::zeta(s, &op, theta, &points)?,
        Command::Trace { op, theta, weight, weight_op, weight_theta, sym } => commands::trace(
            s,
            commands::TraceArgs { op: &op, theta, weight, weight_op: weight_op.as_deref(), weight_theta, sym },
        )?,
        Command::Residue { symbolfile, coboundary, anomaly, theta, theta2, symmetrized, quad } => {
            let need = |v: Option<Real>, flag: &str| {
                v.ok_or_else(|| CliError::from(Error::InvalidInput(format!("{flag} is required here"))))
            };
            if let Some(files) = coboundary {
                commands::residue_coboundary_cmd(s, &files, need(theta, "--theta")?, symmetrized)?
            } else if let Some(files) = anomaly {
                commands::residue_anomaly(s, &files, need(theta, "--theta")?, need(theta2, "--theta2")?, quad)?
            } else {
                let file = symbolfile.expect("clap enforces one mode");
                commands::residue_single(s, &file)?
            }
        }
        Command::Symbol { op, symbolfile, theta, s: power, emit } => commands::symbol(
            s,
            commands::SymbolArgs { op, files: &symbolfile, theta, s: power, emit: emit.as_deref() },
        )?,
        Command::Verify { suite, double } => {
            let (r, pass) = commands::verify(s, suite, double, seed()?)?;
            return Ok((r.render(s.format), pass));
        }
    };
    Ok((report.render(s.format), true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, pass)) => {
            print!("{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error kind={} exit={}: {}", e.kind(), e.exit_code(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
