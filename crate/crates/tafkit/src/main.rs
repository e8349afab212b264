//! Thin command-line front end over [`tafkit::commands`]. All decisions,
//! certificates, and rendering live in the library; this binary only
//! parses arguments, dispatches, and sets the exit code: 0 for any
//! computed verdict, 1 for a failed selftest, 2 for input or limit
//! errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tafkit::commands::{self, IdealFilter};
use tafkit::report::{render_text, Report};

#[derive(Parser)]
#[command(name = "tafkit", version, about = "Two-absorbing ideals, factorizations, and quadratic orders, with machine-checkable certificates")]
struct Cli {
    /// Emit the full report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Refuse computations that would enumerate more than this many
    /// ring elements.
    #[arg(long, global = true, default_value_t = commands::DEFAULT_GUARD, value_name = "N")]
    guard: u64,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an ideal of a finite ring is two-absorbing.
    CheckTa {
        /// Ring presentation, e.g. "Z/12" or "Z/8[x]/(x^2,2x)".
        ring: String,
        /// Comma-separated ideal generators, e.g. "2, x".
        #[arg(long)]
        ideal: String,
    },
    /// Search for a factorization of an ideal into two-absorbing ideals.
    Factor {
        /// Ring presentation, e.g. "Z/12" or "Z/8[x]/(x^2,2x)".
        ring: String,
        /// Comma-separated ideal generators, e.g. "2, x".
        #[arg(long)]
        ideal: String,
        /// Find a factorization with the fewest factors instead of the
        /// first one discovered.
        #[arg(long)]
        shortest: bool,
    },
    /// Audit a ring: does every proper ideal factor into two-absorbing
    /// ideals?
    CheckTaf {
        /// Ring presentation, e.g. "Z/12" or "Z/8[x]/(x^2,2x)".
        ring: String,
    },
    /// List the ideal lattice with two-absorbing, prime, and maximal
    /// flags.
    Ideals {
        /// Ring presentation, e.g. "Z/12" or "Z/8[x]/(x^2,2x)".
        ring: String,
        /// Keep only two-absorbing ideals.
        #[arg(long)]
        ta_only: bool,
        /// Keep only prime ideals.
        #[arg(long)]
        prime_only: bool,
        /// Keep only maximal ideals.
        #[arg(long)]
        maximal_only: bool,
    },
    /// Exact ideal arithmetic in the quadratic order Z[sqrt(d)].
    Quad {
        #[command(subcommand)]
        action: QuadAction,
    },
    /// Classify Z[sqrt(d)] for every eligible d in a range:
    /// square-free d with d = 1 (mod 4).
    ClassifyRange {
        /// Lower end of the range, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        d_min: i64,
        /// Upper end of the range, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        d_max: i64,
    },
    /// Run the built-in verification suite.
    Selftest,
}

#[derive(Args)]
struct QuadArgs {
    /// Square-free d defining the order, e.g. -7.
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    /// Work in the half-integer basis Z[(1+sqrt(d))/2] (needs d = 1 mod 4).
    #[arg(long)]
    half: bool,
    /// Comma-separated generators, written in 1 and w, e.g. "4, 3+w".
    #[arg(long)]
    ideal: String,
}

#[derive(Subcommand)]
enum QuadAction {
    /// Decide whether an ideal of the order is two-absorbing.
    Ta(QuadArgs),
    /// Search for a factorization into two-absorbing ideals.
    Factor {
        #[command(flatten)]
        args: QuadArgs,
        /// Find a factorization with the fewest factors.
        #[arg(long)]
        shortest: bool,
    },
    /// Classify Z[sqrt(d)]: does every proper ideal factor?
    Classify {
        /// Square-free d with d = 1 (mod 4), e.g. -11.
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
}

fn run(cli: &Cli) -> Result<Report, String> {
    let guard = cli.guard;
    let report = match &cli.command {
        Command::CheckTa { ring, ideal } => commands::cmd_check_ta(ring, ideal, guard),
        Command::Factor { ring, ideal, shortest } => {
            commands::cmd_factor(ring, ideal, *shortest, guard)
        }
        Command::CheckTaf { ring } => commands::cmd_check_taf(ring, guard),
        Command::Ideals { ring, ta_only, prime_only, maximal_only } => commands::cmd_ideals(
            ring,
            IdealFilter {
                ta_only: *ta_only,
                prime_only: *prime_only,
                maximal_only: *maximal_only,
            },
            guard,
        ),
        Command::Quad { action } => match action {
            QuadAction::Ta(args) => {
                commands::cmd_quad_ta(args.d as i128, args.half, &args.ideal, guard)
            }
            QuadAction::Factor { args, shortest } => {
                commands::cmd_quad_factor(args.d as i128, args.half, &args.ideal, *shortest, guard)
            }
            QuadAction::Classify { d } => commands::cmd_quad_classify(*d as i128),
        },
        Command::ClassifyRange { d_min, d_max } => {
            commands::cmd_classify_range(*d_min as i128, *d_max as i128)
        }
        Command::Selftest => commands::cmd_selftest(guard),
    }
    .map_err(|e| e.to_string())?;

    if let Some(path) = &cli.out {
        let json = serde_json::to_string_pretty(&report).expect("reports serialize");
        std::fs::write(path, json + "\n").map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        );
    } else {
        print!("{}", render_text(&report));
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if report.command == "selftest" && report.verdict != "pass" {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
