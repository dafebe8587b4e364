use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use misere_cli::session::{run_session, serve, SessionConfig};
use misere_core::solver::{Budget, Solver, DEFAULT_MAX_CELLS};
use misere_core::verifier::{run_suite, SuiteOptions, SUITES};
use misere_core::{oracle, BoardSpec, Extent, GameState, Player, Rules, StrategyName};

#[derive(Parser)]
#[command(name = "misere", version, about = "Misère Connect k: outcomes, solver, verifier and engine sessions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the value of the empty board under optimal play.
    Outcome {
        /// Width, or `inf`.
        width: Extent,
        /// Height, or `inf`.
        height: Extent,
        k: u32,
    },
    /// Solve a position by exhaustive search.
    Solve {
        width: u32,
        height: u32,
        k: u32,
        /// Comma-separated columns played from the empty board.
        #[arg(long, value_delimiter = ',')]
        moves: Vec<usize>,
        #[command(flatten)]
        limits: Limits,
        /// Search root moves on several threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Run a verification suite; certificates go to stdout as JSON lines.
    Verify {
        suite: String,
        /// Cell ceiling for the table sweep.
        #[arg(long, default_value_t = 16)]
        max_cells: u32,
        /// Widest single row for the relaxed-rules suites.
        #[arg(long, default_value_t = 12)]
        max_width: u32,
        /// Also write certificates to this file.
        #[arg(long)]
        certificates: Option<std::path::PathBuf>,
    },
    /// Serve the line protocol on stdin/stdout, or on a TCP address.
    Session {
        /// Listen on this address, one session per connection.
        #[arg(long)]
        listen: Option<String>,
        #[arg(long, default_value_t = 7)]
        width: u32,
        #[arg(long, default_value_t = 6)]
        height: u32,
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// Engine seat: P1, P2 or none.
        #[arg(long, default_value = "P2")]
        seat: String,
        #[arg(long, default_value = "auto")]
        strategy: StrategyName,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Largest w*h the solver accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
    /// Node budget for one solve.
    #[arg(long)]
    budget: Option<u64>,
    /// Time budget for one solve, in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
}

impl Limits {
    fn solver(&self) -> Solver {
        Solver::with_max_cells(self.max_cells)
    }

    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget,
            max_time: self.budget_ms.map(Duration::from_millis),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Outcome { width, height, k } => {
            let spec = BoardSpec::new(width, height, k)?;
            println!("{}", oracle::outcome(&spec));
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            width,
            height,
            k,
            moves,
            limits,
            parallel,
        } => {
            let spec = BoardSpec::finite(width, height, k)?;
            let state = GameState::replay(spec, Rules::default(), &moves)?;
            let solver = limits.solver();
            let solution = if parallel {
                solver.solve_parallel(&state, limits.budget())
            } else {
                solver.solve(&state, limits.budget())
            }?;
            println!("{}", state.render());
            match solution.best_move {
                Some(col) => println!("{} best move {col} ({} nodes)", solution.outcome, solution.nodes),
                None => println!("{} (terminal)", solution.outcome),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_cells,
            max_width,
            certificates,
        } => {
            if !SUITES.contains(&suite.as_str()) {
                bail!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "));
            }
            let options = SuiteOptions {
                max_cells,
                max_width,
                ..SuiteOptions::default()
            };
            let checks = run_suite(&suite, &options)?;
            let mut file = match certificates {
                Some(path) => Some(BufWriter::new(
                    File::create(&path).with_context(|| format!("creating {}", path.display()))?,
                )),
                None => None,
            };
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let mut failed = 0;
            for check in &checks {
                let line = check.certificate();
                writeln!(out, "{line}")?;
                if let Some(f) = file.as_mut() {
                    writeln!(f, "{line}")?;
                }
                if !check.passed {
                    failed += 1;
                    eprintln!("FAIL {}: {}", check.label, check.detail);
                }
            }
            if let Some(mut f) = file {
                f.flush()?;
            }
            eprintln!("{suite}: {} checks, {failed} failed", checks.len());
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Session {
            listen,
            width,
            height,
            k,
            seat,
            strategy,
            limits,
        } => {
            let engine_seat = match seat.to_ascii_lowercase().as_str() {
                "none" => None,
                _ => Some(seat.parse::<Player>()?),
            };
            BoardSpec::finite(width, height, k)?;
            let config = SessionConfig {
                width,
                height,
                k,
                engine_seat,
                strategy,
                solver: limits.solver(),
                budget: if limits.budget.is_none() && limits.budget_ms.is_none() {
                    SessionConfig::default().budget
                } else {
                    limits.budget()
                },
            };
            match listen {
                Some(addr) => serve(config, addr)?,
                None => run_session(config, io::stdin().lock(), io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
