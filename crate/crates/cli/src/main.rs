//! `minviol`: run or lint a planning scenario.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use minviol::experiment::{self, Overrides};
use minviol::scenario::{self, StrategyName};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Rrg,
    RrtStar,
    KRrg,
    KRrtStar,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

impl From<Switch> for bool {
    fn from(s: Switch) -> bool {
        matches!(s, Switch::On)
    }
}

/// Minimum-violation planning on a scenario file.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Scenario file (TOML).
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    samples_per_iter: Option<usize>,
    #[arg(long, value_enum)]
    strategy: Option<Strategy>,
    /// Push rewiring improvements to descendants (tree strategies).
    #[arg(long, value_enum)]
    propagate: Option<Switch>,
    /// Compute transition costs on all cores.
    #[arg(long, value_enum)]
    parallel: Option<Switch>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Check the scenario and exit without planning.
    #[arg(long)]
    lint: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };

    if args.lint {
        return match scenario::lint(&text) {
            Ok(report) => {
                print!("{report}");
                if report.is_clean() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", args.config.display());
                ExitCode::from(2)
            }
        };
    }

    let overrides = Overrides {
        seed: args.seed,
        iterations: args.iterations,
        samples_per_iter: args.samples_per_iter,
        strategy: args.strategy.map(|s| match s {
            Strategy::Rrg => StrategyName::Rrg,
            Strategy::RrtStar => StrategyName::RrtStar,
            Strategy::KRrg => StrategyName::KRrg,
            Strategy::KRrtStar => StrategyName::KRrtStar,
        }),
        propagate: args.propagate.map(bool::from),
        parallel: args.parallel.map(bool::from),
    };
    let scenario = match experiment::load(&text, &overrides) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    let result = match experiment::run(scenario) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = result.write(&args.out) {
        eprintln!("error: writing {}: {e}", args.out.display());
        return ExitCode::from(2);
    }
    for r in &result.records {
        match &r.trace {
            Some(t) => println!(
                "iteration {:>3}  cost {}  {:.3}s  propagated {}",
                r.iteration, t.weight, r.seconds, r.stats.propagated
            ),
            None => println!(
                "iteration {:>3}  no goal reached  {:.3}s  propagated {}",
                r.iteration, r.seconds, r.stats.propagated
            ),
        }
    }
    ExitCode::SUCCESS
}
