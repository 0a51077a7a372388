use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bkflow::{Algorithm, ModeRequest};

mod bench;
mod check;
mod generate;
mod run;
mod solve;

#[derive(Parser)]
#[command(
    name = "bkflow",
    version,
    about = "Max-flow / min-cut on compact residual graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and print the flow value.
    Solve(solve::SolveArgs),
    /// Compare both engines against the reference solver.
    Check(check::CheckArgs),
    /// Write a seeded random problem.
    GenRandom(generate::RandomArgs),
    /// Write a surface-detection problem.
    GenSurface(generate::SurfaceArgs),
    /// Time solves over a set of problem files.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Cbk,
    Fcbk,
    Oracle,
}

impl AlgoArg {
    pub fn engine(self) -> Option<Algorithm> {
        match self {
            AlgoArg::Cbk => Some(Algorithm::Cbk),
            AlgoArg::Fcbk => Some(Algorithm::Fcbk),
            AlgoArg::Oracle => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgoArg::Cbk => "cbk",
            AlgoArg::Fcbk => "fcbk",
            AlgoArg::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Absolute,
    Relative,
}

impl From<ModeArg> for ModeRequest {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => ModeRequest::Auto,
            ModeArg::Absolute => ModeRequest::Absolute,
            ModeArg::Relative => ModeRequest::Relative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Dimacs,
    Binary,
}

impl From<FormatArg> for bkflow::io::ProblemFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dimacs => bkflow::io::ProblemFormat::Dimacs,
            FormatArg::Binary => bkflow::io::ProblemFormat::Binary,
        }
    }
}

/// Engine options shared by `solve` and `bench`.
#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value_t = AlgoArg::Fcbk)]
    pub algo: AlgoArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Check solver invariants while running (also enabled by BKFLOW_DEBUG_INVARIANTS).
    #[arg(long)]
    pub debug_invariants: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve::run(&a),
        Command::Check(a) => check::run(&a),
        Command::GenRandom(a) => generate::run_random(&a),
        Command::GenSurface(a) => generate::run_surface(&a),
        Command::Bench(a) => bench::run(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
