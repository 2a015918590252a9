//! `ncode`: analyze neural codes, search for interval realizations, apply
//! code maps and count neural ring homomorphisms.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use ncode::interval::Mode;

#[derive(Parser)]
#[command(name = "ncode", version, about = "Combinatorial neural code toolkit")]
struct Cli {
    /// Print the full report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for searches and censuses.
    #[arg(long, global = true, env = "NCODE_WORKERS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal codewords, intersection completeness, doublet maximality and
    /// one-dimensional obstructions of a code.
    Analyze { file: PathBuf },
    /// Exhaustive search for a realization by intervals of the line.
    Realize {
        #[arg(long, value_enum, default_value = "open")]
        mode: ModeArg,
        /// Largest number of used neurons to search.
        #[arg(long, default_value_t = ncode::interval::DEFAULT_SEARCH_CAP)]
        cap: usize,
        file: PathBuf,
    },
    /// The atom of every codeword of a realization.
    Atoms { realization: PathBuf },
    /// Convert an open realization to a closed one or back.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        realization: PathBuf,
    },
    /// Code maps.
    Map {
        #[command(subcommand)]
        action: MapAction,
    },
    /// Count neural ring homomorphisms of a circulant code or of a code file.
    Census {
        #[arg(long, required_unless_present = "code")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "code")]
        p: Option<usize>,
        /// Count for this code instead of a circulant one.
        #[arg(long, conflicts_with_all = ["n", "p"])]
        code: Option<PathBuf>,
        /// Skip index functions ruled out by norms (circulant codes only).
        #[arg(long)]
        prune: bool,
        /// Count one class of index functions only.
        #[arg(long, value_enum, default_value = "all")]
        class: ClassArg,
        /// Raise the size cap.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Include the frontier census cells, among them n=10, p=5.
        #[arg(long)]
        frontier: bool,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Write report.json (and circulant.md for circulant suites) here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapAction {
    /// Apply a composed map given as JSON stages to a code.
    Apply {
        #[arg(long)]
        spec: PathBuf,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Open,
    Closed,
    Convex,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Open => Mode::Open,
            ModeArg::Closed => Mode::Closed,
            ModeArg::Convex => Mode::Convex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Open,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Bpm,
    Um,
    Other,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Realization,
    Maps,
    Ring,
    Circulant,
    All,
}

fn run(cli: Cli) -> Result<commands::Outcome> {
    let workers = cli.workers as usize;
    match cli.command {
        Command::Analyze { file } => commands::analyze(&file),
        Command::Realize { mode, cap, file } => commands::realize(&file, mode.into(), cap, workers),
        Command::Atoms { realization } => commands::atoms(&realization),
        Command::Convert { to, realization } => commands::convert(&realization, matches!(to, Target::Closed)),
        Command::Map { action: MapAction::Apply { spec, file } } => commands::map_apply(&spec, &file),
        Command::Census { n, p, code, prune, class, cap } => {
            use ncode::ring::{CensusFilter, EndoClass};
            let filter = match class {
                ClassArg::All => CensusFilter::All,
                ClassArg::Bpm => CensusFilter::Only(EndoClass::Bpm),
                ClassArg::Um => CensusFilter::Only(EndoClass::Um),
                ClassArg::Other => CensusFilter::Only(EndoClass::Other),
            };
            let source = match (code, n, p) {
                (Some(path), _, _) => commands::CensusSource::File(path),
                (None, Some(n), Some(p)) => commands::CensusSource::Circulant(n, p),
                _ => anyhow::bail!("give --n and --p, or --code"),
            };
            commands::census(source, filter, prune, workers, cap)
        }
        Command::Verify { suite, seed, frontier, n_min, n_max, out_dir } => {
            let suite = match suite {
                SuiteArg::Realization => ncode::verify::Suite::Realization,
                SuiteArg::Maps => ncode::verify::Suite::Maps,
                SuiteArg::Ring => ncode::verify::Suite::Ring,
                SuiteArg::Circulant => ncode::verify::Suite::Circulant,
                SuiteArg::All => ncode::verify::Suite::All,
            };
            let cfg = ncode::verify::VerifyConfig { seed, workers, frontier, n_min, n_max, ..Default::default() };
            commands::verify(suite, &cfg, out_dir.as_deref())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                println!("{}", outcome.report.to_json());
            } else {
                print!("{}", outcome.text);
            }
            if outcome.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
