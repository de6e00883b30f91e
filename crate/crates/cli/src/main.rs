use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use entwit_cli::commands::{
    cmd_analyze, cmd_bench, cmd_family, cmd_generate_bound, cmd_verify_optimality, parse_ensemble,
    parse_sweep, FamilyMode, WeightSource,
};
use entwit_cli::report::RunReport;
use entwit_cli::{CliError, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

/// Entanglement detection toolkit: separability criteria, witnesses and
/// bound entangled state construction on bipartite states.
#[derive(Parser)]
#[command(name = "entwit", version, about)]
struct Cli {
    /// Detection tolerance applied to criterion scores.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Emit the run report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized commands (reproducible bit-for-bit).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every separability criterion on a JSON state file.
    Analyze {
        /// State file: {"dims": [d1, d2], "re": [[..]], "im": [[..]]}.
        path: PathBuf,
    },
    /// Explore the singlet/Werner mixture family on C^N ⊗ C^N.
    Family {
        /// Single-particle dimension (even, >= 4).
        #[arg(long = "N")]
        n: usize,
        /// Analyze one mixture parameter; writes a state file with --out.
        #[arg(long, conflicts_with_all = ["sweep", "thresholds"])]
        lambda: Option<f64>,
        /// Scan start:stop:step and emit one CSV row per point.
        #[arg(long, conflicts_with = "thresholds")]
        sweep: Option<String>,
        /// Bisect the detection threshold of each criterion.
        #[arg(long)]
        thresholds: bool,
    },
    /// Construct a PPT bound entangled state and write it to --out.
    GenerateBound {
        /// Single-particle dimension (even, >= 4).
        #[arg(long = "N")]
        n: usize,
        /// Base mixture parameter in the PPT-detected window (0, 1/(N+2)].
        #[arg(long)]
        lambda: f64,
        /// Explicit 2N comma-separated weights (defaults to seeded draws).
        #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
        weights: Option<Vec<f64>>,
    },
    /// Certify the witness numerically: span rank, invariance, detection.
    VerifyOptimality {
        /// Single-particle dimension (even, >= 4).
        #[arg(long = "N")]
        n: usize,
        /// Sampled product vectors (default 2N²).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Per-criterion detection counts over a random ensemble.
    Bench {
        /// First factor dimension.
        #[arg(long)]
        d1: usize,
        /// Second factor dimension.
        #[arg(long)]
        d2: usize,
        /// One of: ginibre, haar, separable.
        #[arg(long)]
        ensemble: String,
        /// Mixture components for the separable ensemble.
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Number of sampled states.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::from(EXIT_OK as u8);
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.exit_code as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let seed = cli.seed.unwrap_or(0);
    let (report, code) = match &cli.command {
        Command::Analyze { path } => (cmd_analyze(path, cli.tol)?, EXIT_OK),
        Command::Family {
            n,
            lambda,
            sweep,
            thresholds,
        } => {
            let mode = if *thresholds {
                FamilyMode::Thresholds
            } else if let Some(spec) = sweep {
                parse_sweep(spec)?
            } else if let Some(lambda) = lambda {
                FamilyMode::Single { lambda: *lambda }
            } else {
                return Err(CliError::usage(
                    "family needs one of --lambda, --sweep or --thresholds",
                ));
            };
            (cmd_family(*n, &mode, cli.tol, cli.out.as_deref())?, EXIT_OK)
        }
        Command::GenerateBound { n, lambda, weights } => {
            let out = cli.out.as_deref().ok_or_else(|| {
                CliError::usage("generate-bound needs --out to place the state file")
            })?;
            let source = match weights {
                Some(values) => WeightSource::Explicit(values.clone()),
                None => WeightSource::Seeded(seed),
            };
            (
                cmd_generate_bound(*n, *lambda, &source, out, cli.tol)?,
                EXIT_OK,
            )
        }
        Command::VerifyOptimality { n, samples } => {
            let report = cmd_verify_optimality(*n, *samples, seed, cli.tol)?;
            let confirmed = report
                .optimality
                .as_ref()
                .map(|s| s.confirmed)
                .unwrap_or(false);
            (report, if confirmed { EXIT_OK } else { EXIT_NUMERICAL })
        }
        Command::Bench {
            d1,
            d2,
            ensemble,
            k,
            samples,
        } => {
            let ensemble = parse_ensemble(ensemble, *k)?;
            (
                cmd_bench((*d1, *d2), ensemble, *samples, seed, cli.tol)?,
                EXIT_OK,
            )
        }
    };
    emit(&report, cli.json);
    Ok(code)
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_human());
    }
}
