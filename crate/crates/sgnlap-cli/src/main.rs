use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use sgnlap_cli::curves::{cmd_enclosure_curve, CurveArgs};
use sgnlap_cli::report::SuiteReport;
use sgnlap_cli::solve::{cmd_solve, SolveArgs};
use sgnlap_cli::suites::{run_suite, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "sgnlap", about = "spectral enclosures for sgn(x)(-d²/dx² + V)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace an enclosure boundary curve to CSV (and optionally SVG).
    EnclosureCurve {
        /// Which bound to trace: bst, l1, lp, imag-l1, imag-lp, split, linf.
        #[arg(long)]
        bound: Option<String>,
        /// Lebesgue exponent for the p-dependent bounds.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Potential norm the curve is drawn at.
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        /// Upper-half sample count; the traced curve mirrors to 2N rows.
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Named curve family instead of a single bound: figure1, figure2.
        #[arg(long, conflicts_with = "bound")]
        preset: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Find and certify eigenvalues of a serialized potential in a λ-box.
    Solve {
        #[arg(long)]
        potential: PathBuf,
        /// Search rectangle RE0,RE1,IM0,IM1.
        #[arg(long, allow_hyphen_values = true)]
        region: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named acceptance suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Hex seed for the randomized criteria (default 5EED).
        #[arg(long)]
        seed: Option<String>,
    },
}

fn run(cli: Cli) -> Result<SuiteReport> {
    match cli.command {
        Command::EnclosureCurve {
            bound,
            p,
            q,
            samples,
            preset,
            out,
            svg,
        } => {
            let bound = bound
                .map(|s| s.parse::<sgnlap::BoundId>())
                .transpose()
                .context("parsing --bound")?;
            cmd_enclosure_curve(&CurveArgs {
                bound,
                p,
                q,
                samples,
                preset,
                out,
                svg,
            })
        }
        Command::Solve {
            potential,
            region,
            out,
        } => cmd_solve(&SolveArgs {
            potential,
            region,
            out,
        }),
        Command::Verify { suite, seed } => {
            let seed = match seed {
                Some(s) => u64::from_str_radix(s.trim().trim_start_matches("0x"), 16)
                    .with_context(|| format!("parsing --seed {s:?} as hex"))?,
                None => DEFAULT_SEED,
            };
            run_suite(&suite, seed)
        }
    }
}

fn main() -> ExitCode {
    sgnlap_cli::init_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.to_json());
            eprint!("{}", report.human_summary());
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
