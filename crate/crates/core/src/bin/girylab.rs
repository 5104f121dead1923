use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use girylab::cli::{
    cmd_barycenter, cmd_check, cmd_compose, cmd_separate, list_suites, CheckOptions,
};
use girylab::finmeas::set_max_enum;
use girylab::model::Model;

#[derive(Parser)]
#[command(
    name = "girylab",
    version,
    about = "Exact law checks for finite probability monads and convex spaces"
)]
struct Cli {
    /// Print the available suites and exit.
    #[arg(long)]
    list_suites: bool,

    /// Cap on candidate maps visited by exhaustive enumerations.
    #[arg(long, env = "GIRYLAB_MAX_ENUM", global = true)]
    max_enum: Option<u64>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run law suites over a model file.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add per-subject wall time to each record.
        #[arg(long)]
        timings: bool,
    },
    /// Compose two kernels, first `k1` then `k2`.
    Compose {
        file: PathBuf,
        k1: String,
        k2: String,
    },
    /// Barycenter of a measure on a convex space.
    Barycenter {
        file: PathBuf,
        convex: String,
        measure: String,
    },
    /// Separation quotient of a space.
    Separate { file: PathBuf, space: String },
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.max_enum {
        set_max_enum(cap);
    }
    if cli.list_suites {
        return match emit(cli.out.as_deref(), &list_suites()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let Some(command) = cli.command else {
        eprintln!("error: no command given; try --help");
        return ExitCode::from(2);
    };
    let result = match command {
        Command::Check {
            file,
            suite,
            seed,
            timings,
        } => Model::load(&file)
            .and_then(|m| {
                cmd_check(
                    &m,
                    &CheckOptions {
                        suite,
                        seed,
                        timings,
                    },
                )
            })
            .map(|o| (o.text, o.passed)),
        Command::Compose { file, k1, k2 } => Model::load(&file)
            .and_then(|m| cmd_compose(&m, &k1, &k2))
            .map(|t| (t, true)),
        Command::Barycenter {
            file,
            convex,
            measure,
        } => Model::load(&file)
            .and_then(|m| cmd_barycenter(&m, &convex, &measure))
            .map(|t| (t, true)),
        Command::Separate { file, space } => Model::load(&file)
            .and_then(|m| cmd_separate(&m, &space))
            .map(|t| (t, true)),
    };
    match result {
        Ok((text, passed)) => {
            if let Err(e) = emit(cli.out.as_deref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
