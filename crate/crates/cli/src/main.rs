use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use llspin::spin::GammaSet;
use llspin::spinor::ExtensionPolicy;
use llspin_cli::{check, render_selftest, selftest, verify, CliError, ExitCode, JobSpec, Outcome, TheoremSelector};

#[derive(Parser)]
#[command(name = "llspin", version, about = "Verify spinor identities on lightlike hypersurfaces of Minkowski space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact Clifford-algebra and gamma-matrix law suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Flip the sign of gamma K at (ROW, COL) before testing.
        #[arg(long, hide = true, value_parser = parse_flip, value_name = "K,ROW,COL")]
        flip_gamma: Option<(usize, usize, usize)>,
    },
    /// Report the induced-metric rank at every grid point of a chart.
    Check {
        chart: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the selected identities at every grid point.
    Verify {
        chart: PathBuf,
        /// Spinor field JSON; random quadratic fields are used when absent.
        #[arg(long)]
        spinor: Option<PathBuf>,
        #[arg(long, value_enum, value_delimiter = ',')]
        theorems: Option<Vec<TheoremSelector>>,
        /// Replace every default tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Random spinor fields per point.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Also check curvature on frame-vector pairs.
        #[arg(long)]
        frame_pairs: bool,
        /// `strict` refuses to guess a transversal derivative.
        #[arg(long, value_enum, default_value = "constant")]
        extension: Extension,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Extension {
    Constant,
    Strict,
}

fn parse_flip(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> =
        s.split(',').map(|p| p.trim().parse().map_err(|e| format!("{p:?}: {e}"))).collect::<Result<_, _>>()?;
    match parts[..] {
        [k, r, c] if k < 4 && r < 4 && c < 4 => Ok((k, r, c)),
        _ => Err("expected three indices below 4".into()),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    process::exit(code.code());
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Selftest { seed, flip_gamma } => {
            let mut gammas = GammaSet::dirac();
            if let Some((k, r, c)) = flip_gamma {
                gammas = gammas.with_flipped_entry(k, r, c);
            }
            let (code, report) = selftest(&gammas, seed);
            print!("{}", render_selftest(&report));
            Ok(code)
        }
        Command::Check { chart, out } => {
            let outcome = check(&chart, llspin_cli::job::threads_from_env())?;
            emit(&outcome, out)
        }
        Command::Verify { chart, spinor, theorems, tol, seed, out, samples, frame_pairs, extension } => {
            let mut job = JobSpec::new(chart);
            job.spinor = spinor;
            if let Some(t) = theorems {
                job.theorems = t.into_iter().collect();
            }
            job.tolerance = tol;
            job.seed = seed;
            job.samples = samples;
            job.frame_pairs = frame_pairs;
            job.extension = match extension {
                Extension::Constant => ExtensionPolicy::Constant,
                Extension::Strict => ExtensionPolicy::Strict,
            };
            job.out = out.clone();
            let outcome = verify(&job)?;
            emit(&outcome, out)
        }
    }
}

/// Writes the report to `out` or stdout and a one-line summary to stderr.
fn emit(outcome: &Outcome, out: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let json = outcome.report.to_json();
    match out {
        Some(path) => std::fs::write(&path, json + "\n").map_err(|source| CliError::Write { path, source })?,
        None => println!("{json}"),
    }
    let s = &outcome.report.summary;
    eprintln!(
        "{}: {} checked, {} failed, {} errors, {} informational",
        if s.pass { "pass" } else { "fail" },
        s.checked,
        s.failed,
        s.errors,
        s.informational
    );
    Ok(outcome.exit)
}
