use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use phasereflect::acceptance::{run_command, run_criterion};
use phasereflect::cli::RunConfig;

#[derive(Parser)]
#[command(name = "phasereflect", version, about = "Semiclassical transition densities via phase-space reflections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// key = value configuration file
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Overrides, e.g. `--set hbar=0.01`
    #[arg(short, long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// CSV destination; stdout when absent
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Oscillator matrix elements and identity residuals on a grid
    Wigner(RunArgs),
    /// Exact smoothed spectral Wigner function against the Airy form
    Spectral(RunArgs),
    /// Classical transition densities along an offset scan
    Transition(RunArgs),
    /// The one-dimensional caustic
    Caustic(RunArgs),
    /// Random polygon invariance, closure and tangency checks
    Polygon(RunArgs),
    /// Runs the acceptance criteria
    Acceptance {
        /// Criteria to run, e.g. `1,4,8`; all when absent
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory for one CSV per criterion
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

fn run(args: &RunArgs, name: &str) -> phasereflect::Result<()> {
    let cfg = RunConfig::assemble(args.config.as_deref(), std::env::vars(), &args.set)?;
    let table = run_command(name, &cfg)?;
    match args.output.clone().or_else(|| cfg.output().map(PathBuf::from)) {
        Some(path) => table.write(path),
        None => {
            print!("{}", table.to_csv());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Wigner(a) => run(a, "wigner"),
        Command::Spectral(a) => run(a, "spectral"),
        Command::Transition(a) => run(a, "transition"),
        Command::Caustic(a) => run(a, "caustic"),
        Command::Polygon(a) => run(a, "polygon"),
        Command::Acceptance {
            criteria,
            seed,
            output_dir,
        } => {
            let ids = if criteria.is_empty() { (1..=9).collect() } else { criteria.clone() };
            let mut all = true;
            for id in ids {
                let report = run_criterion(id, *seed);
                println!("{}", report.line());
                all &= report.passed;
                if let Some(dir) = output_dir {
                    let written = std::fs::create_dir_all(dir)
                        .map_err(phasereflect::Error::from)
                        .and_then(|_| report.table.write(dir.join(format!("criterion_{id}.csv"))));
                    if let Err(e) = written {
                        eprintln!("error: {e}");
                        return ExitCode::FAILURE;
                    }
                }
            }
            return if all { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
