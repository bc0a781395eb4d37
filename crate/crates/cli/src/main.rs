use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use clt_transport_cli::commands::{self, CertClass, CommandOutput, DistMetric, PsiKind};
use clt_transport_cli::report::write_outputs;
use clt_transport_cli::{run_sweep, CliError, Result, SweepConfig};

/// Transport distances to the Gaussian, cumulant certificates and sweeps.
#[derive(Parser)]
#[command(name = "clt-transport", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep described by a TOML config.
    Sweep { config: PathBuf },
    /// Distance between two laws (`companion` as the second law means the
    /// Gaussian with the first law's mean and variance).
    Dist {
        left: String,
        right: String,
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Exponent for `--metric wp` (default 2) or `--psi pow`.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "exp")]
        psi: PsiArg,
    },
    /// Cumulant-class certificate of a lattice law.
    Certify {
        law: String,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Check the class at this τ; exit status 1 when it fails.
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Exponential tilt moving the mean to a target.
    Tilt {
        law: String,
        #[arg(long, allow_negative_numbers = true)]
        target_mean: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Rho,
    Levy,
    W1,
    Wp,
    Wpsi,
}

#[derive(Clone, Copy, ValueEnum)]
enum PsiArg {
    Exp,
    Abs,
    Pow,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Stat,
    Bern,
    Sakh,
    A1,
}

/// Writes to stdout. A closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io("<stdout>", e)),
        _ => Ok(()),
    }
}

fn print(out: CommandOutput) -> Result<bool> {
    emit(&format!("{}\n", serde_json::to_string_pretty(&out.json)?))?;
    Ok(out.passed)
}

fn sweep(path: &PathBuf) -> Result<bool> {
    let config = SweepConfig::load(path)?;
    let outcome = run_sweep(&config)?;
    write_outputs(&outcome, &config.output)?;
    let s = &outcome.summary;
    let mut text = format!("{}: {} rows, {} with errors\n", s.family, s.rows, s.failed_rows);
    for r in &s.ratios {
        let f = |v: Option<f64>| v.map(|x| format!("{x:.6e}")).unwrap_or_else(|| "-".into());
        text += &format!("  {:<20} min {:<14} max {}\n", r.column, f(r.min), f(r.max));
    }
    for a in &s.assertions {
        text += &format!("  {} {}: {}\n", if a.passed { "PASS" } else { "FAIL" }, a.name, a.detail);
    }
    emit(&text)?;
    Ok(s.passed)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sweep { config } => sweep(&config),
        Command::Dist { left, right, metric, p, psi } => {
            let metric = match metric {
                MetricArg::Rho => DistMetric::Rho,
                MetricArg::Levy => DistMetric::Levy,
                MetricArg::W1 => DistMetric::W1,
                MetricArg::Wp => DistMetric::Wp,
                MetricArg::Wpsi => DistMetric::Wpsi,
            };
            let psi = match psi {
                PsiArg::Exp => PsiKind::Exp,
                PsiArg::Abs => PsiKind::Abs,
                PsiArg::Pow => PsiKind::Pow,
            };
            print(commands::dist(&left, &right, metric, p, psi)?)
        }
        Command::Certify { law, class, tau, order } => {
            let class = match class {
                ClassArg::Stat => CertClass::Stat,
                ClassArg::Bern => CertClass::Bern,
                ClassArg::Sakh => CertClass::Sakh,
                ClassArg::A1 => CertClass::A1,
            };
            print(commands::certify(&law, class, tau, order)?)
        }
        Command::Tilt { law, target_mean } => print(commands::tilt(&law, target_mean)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
