use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dyntopo_cli::bench::bench_compare;
use dyntopo_cli::dot::export_dot;
use dyntopo_cli::trace::{parse_trace, ReplaySession, TraceOp};

/// Replay graph traces against an incrementally maintained topological
/// ordering that tolerates cycles.
#[derive(Parser)]
#[command(name = "dyntopo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a trace and print one line per effectful operation.
    Run { trace: PathBuf },
    /// Replay a trace, then print the final graph as DOT.
    Dot { trace: PathBuf },
    /// Replay a mutation-only trace twice (incremental vs batch) and print
    /// timing stats.
    Bench { trace: PathBuf },
}

// Exit codes: 0 success, 1 parse (or read) error, 2 semantic error,
// 3 invariant failure reported by a `check` op.
const EXIT_PARSE: u8 = 1;
const EXIT_SEMANTIC: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (path, print_replay_output) = match &cli.command {
        Command::Run { trace } => (trace, true),
        Command::Dot { trace } => (trace, false),
        Command::Bench { trace } => (trace, false),
    };

    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("dyntopo: {}: {err}", path.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let ops = match parse_trace(&text) {
        Ok(ops) => ops,
        Err(err) => {
            eprintln!("dyntopo: {}:{err}", path.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };

    if let Command::Bench { .. } = cli.command {
        return match bench_compare(&ops) {
            Ok(stats) => {
                println!("{stats}");
                ExitCode::SUCCESS
            }
            Err(err) => {
                eprintln!("dyntopo: {}:{err}", path.display());
                ExitCode::from(EXIT_SEMANTIC)
            }
        };
    }

    let (session, error) = replay(&ops);
    if print_replay_output {
        print!("{}", session.output());
    }
    if let Some(err) = error {
        eprintln!("dyntopo: {}:{err}", path.display());
        return ExitCode::from(EXIT_SEMANTIC);
    }
    if let Command::Dot { .. } = cli.command {
        print!("{}", export_dot(session.graph(), session.names()));
    }
    if session.failed_checks() > 0 {
        return ExitCode::from(EXIT_CHECK_FAILED);
    }
    ExitCode::SUCCESS
}

/// Replays as far as possible, keeping the partial output on error.
fn replay(ops: &[TraceOp]) -> (ReplaySession, Option<dyntopo_cli::trace::SemanticError>) {
    let mut session = ReplaySession::new();
    for op in ops {
        if let Err(err) = session.apply(op) {
            return (session, Some(err));
        }
    }
    (session, None)
}
