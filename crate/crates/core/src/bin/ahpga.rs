use std::path::PathBuf;
use std::process::ExitCode;

use ahpga::bundle::ProjectBundle;
use ahpga::commands::{self, Outcome, RunOptions, EXIT_INPUT_ERROR, SEED_ENV};
use ahpga::oracle::DEFAULT_LIMIT;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ahpga",
    version,
    about = "Preference-aware school timetabling (AHP scores + genetic algorithm)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Bundle directory with teachers.csv, requirements.csv, preferences.csv, criteria.csv and config.toml
    bundle: PathBuf,
    /// Emit the full report as JSON
    #[arg(long)]
    json: bool,
    /// Print pairwise matrices and unmatched cells
    #[arg(long)]
    verbose: bool,
    /// Proceed even when a comparison matrix has CR >= 0.1
    #[arg(long)]
    allow_inconsistent: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Rank teachers and print their scores
    Score {
        #[command(flatten)]
        common: Common,
    },
    /// Search for a timetable meeting the satisfaction threshold
    Solve {
        #[command(flatten)]
        common: Common,
        /// Satisfaction threshold ST (overrides `st` in config.toml)
        #[arg(long)]
        st: Option<f64>,
        /// RNG seed (overrides AHPGA_SEED and `seed` in config.toml)
        #[arg(long)]
        seed: Option<u64>,
        /// Keep searching for all generations instead of stopping at the first feasible timetable
        #[arg(long)]
        continue_to_budget: bool,
        /// Where to write the resulting timetable
        #[arg(long, short, default_value = "timetable.csv")]
        out: PathBuf,
    },
    /// Evaluate an existing timetable file
    Check {
        #[command(flatten)]
        common: Common,
        /// Timetable CSV with columns class_id,day,slot,teacher_id
        timetable: PathBuf,
        /// Satisfaction threshold ST (overrides `st` in config.toml)
        #[arg(long)]
        st: Option<f64>,
    },
    /// Count the search space and, if small enough, find the exact optimum
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Refuse to enumerate when the search space exceeds this many timetables
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        /// Satisfaction threshold ST (overrides `st` in config.toml)
        #[arg(long)]
        st: Option<f64>,
    },
}

fn load(common: &Common) -> Result<ProjectBundle, String> {
    ProjectBundle::load_dir(&common.bundle).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<(Outcome, bool, bool), String> {
    let (outcome, common) = match cli.command {
        Command::Score { common } => {
            let opts = RunOptions {
                allow_inconsistent: common.allow_inconsistent,
                ..Default::default()
            };
            (commands::score(&load(&common)?, &opts), common)
        }
        Command::Solve {
            common,
            st,
            seed,
            continue_to_budget,
            out,
        } => {
            let env = std::env::var(SEED_ENV).ok();
            let seed = commands::resolve_seed(seed, env.as_deref()).map_err(|e| e.to_string())?;
            let opts = RunOptions {
                st,
                seed,
                continue_to_budget,
                allow_inconsistent: common.allow_inconsistent,
                ..Default::default()
            };
            let outcome = commands::solve(&load(&common)?, &opts).map_err(|e| e.to_string())?;
            if let Some(csv) = &outcome.timetable_csv {
                std::fs::write(&out, csv).map_err(|e| format!("{}: {e}", out.display()))?;
            }
            (Ok(outcome), common)
        }
        Command::Check {
            common,
            timetable,
            st,
        } => {
            let opts = RunOptions {
                st,
                allow_inconsistent: common.allow_inconsistent,
                ..Default::default()
            };
            (commands::check(&load(&common)?, &timetable, &opts), common)
        }
        Command::Oracle { common, limit, st } => {
            let opts = RunOptions {
                st,
                limit,
                allow_inconsistent: common.allow_inconsistent,
                ..Default::default()
            };
            (commands::oracle(&load(&common)?, &opts), common)
        }
    };
    Ok((
        outcome.map_err(|e| e.to_string())?,
        common.json,
        common.verbose,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, json, verbose)) => {
            for w in &outcome.report.warnings {
                eprintln!("warning: {w}");
            }
            if json {
                println!("{}", outcome.report.to_json());
            } else {
                print!("{}", outcome.report.render(verbose));
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
