//! `symell`: evaluation, enclosures, inequality checks and verification runs.

mod commands;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symell::asym::{CaseId, FuncKind};
use symell::bounds::IneqId;

use commands::{exit, Failure, Legendre, TableFormat};

const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "symell", version, about = "Carlson symmetric elliptic integrals with certified enclosures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an integral through the dispatcher.
    ///
    /// Kinds: rc rf rd rj rg k e. K and E take the complementary modulus k'.
    /// A negative last argument of rc or rj gives the principal value.
    Eval {
        kind: FuncKind,
        #[arg(required = true, allow_negative_numbers = true)]
        args: Vec<f64>,
        #[arg(long, default_value_t = 1e-12)]
        rel_tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Enclosure of one asymptotic case, with the realized error symbol.
    Asym {
        case: CaseId,
        #[arg(required = true, allow_negative_numbers = true)]
        args: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one elementary inequality at `t` and its arguments.
    BoundsCheck {
        id: IneqId,
        #[arg(allow_negative_numbers = true)]
        t: f64,
        #[arg(required = true, allow_negative_numbers = true)]
        args: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Run verification campaigns.
    Verify {
        /// `all`, `appendix`, `identities`, case or inequality tags, and `first:last` ranges.
        #[arg(long, default_value = "all")]
        cases: String,
        /// `hi:lo` for one ratio per decade, or a comma list.
        #[arg(long, default_value = "1e-2:1e-7")]
        ratios: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Defaults to $SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        /// Report file; `.csv` for CSV, anything else for JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate K or E against their enclosures on a k' grid.
    Table {
        #[arg(long, value_enum)]
        function: Legendre,
        /// Comma-separated k' values in (0, 1).
        #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
        kprime_grid: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Run the identity suite.
    Identities {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn seed_or_env(seed: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var("SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run(cmd: Command) -> commands::Outcome {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match cmd {
        Command::Eval {
            kind,
            args,
            rel_tol,
            json,
        } => commands::eval(kind, &args, rel_tol, json, &mut out)?,
        Command::Asym { case, args, json } => commands::asym(case, &args, json, &mut out)?,
        Command::BoundsCheck { id, t, args, json } => commands::bounds_check(id, t, &args, json, &mut out)?,
        Command::Verify {
            cases,
            ratios,
            samples,
            seed,
            out: path,
        } => {
            let sel = commands::parse_cases(&cases)?;
            let ratios = commands::parse_ratios(&ratios)?;
            commands::verify(&sel, &ratios, samples, seed_or_env(seed)?, path.as_deref(), &mut out)?
        }
        Command::Table {
            function,
            kprime_grid,
            format,
        } => commands::table(function, &commands::parse_grid(&kprime_grid)?, format, &mut out)?,
        Command::Identities { samples, seed, json } => {
            commands::identities(samples, seed_or_env(seed)?, json, &mut out)?
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli.command) {
        Ok(c) => c,
        Err(f) => {
            eprintln!("symell: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code as u8)
}
