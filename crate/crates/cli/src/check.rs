use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::Args;

use bkflow::io::load_problem;
use bkflow::oracle::{differential_instance, oracle_cut_value, oracle_max_flow};
use bkflow::{build, extract_cut, solve_with, Algorithm, ModeRequest, Problem, SolveConfig};

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Problem files to check.
    pub files: Vec<PathBuf>,
    /// Seeds of the random family, as `start..end`. Defaults to 0..100 when
    /// no files are given.
    #[arg(long, value_parser = parse_range)]
    pub seeds: Option<Range<u64>>,
}

fn parse_range(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected start..end, got `{s}`"))?;
    let parse = |t: &str| t.parse::<u64>().map_err(|_| format!("bad seed `{t}`"));
    Ok(parse(a)?..parse(b)?)
}

pub fn run(args: &CheckArgs) -> Result<ExitCode> {
    let seeds = match (&args.seeds, args.files.is_empty()) {
        (Some(r), _) => r.clone(),
        (None, true) => 0..100,
        (None, false) => 0..0,
    };
    let mut outcomes: Vec<(String, Option<String>)> = Vec::new();
    for seed in seeds {
        outcomes.push((
            format!("seed {seed}"),
            disagreement(&differential_instance(seed)),
        ));
    }
    for path in &args.files {
        let why = match load_problem(path) {
            Ok(p) => disagreement(&p),
            Err(e) => Some(format!("{:#}", anyhow::Error::from(e))),
        };
        outcomes.push((path.display().to_string(), why));
    }
    let mut agreements = 0u64;
    let mut mismatches = 0u64;
    for (label, why) in outcomes {
        match why {
            None => agreements += 1,
            Some(why) => {
                mismatches += 1;
                eprintln!("{label}: {why}");
            }
        }
    }
    println!("{agreements} agreements, {mismatches} mismatches");
    Ok(if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

/// Runs both engines with invariant checks against the reference solver.
fn disagreement(problem: &Problem) -> Option<String> {
    let want = oracle_max_flow(problem);
    for algo in [Algorithm::Cbk, Algorithm::Fcbk] {
        let mut store = match build(problem, ModeRequest::Auto) {
            Ok((s, _)) => s,
            Err(e) => return Some(format!("build failed: {e}")),
        };
        let stats = solve_with(&mut store, &SolveConfig::debug(algo));
        if stats.flow != want {
            return Some(format!(
                "{} flow {} but reference flow {want}",
                algo.name(),
                stats.flow
            ));
        }
        if let Some(v) = stats.first_violation {
            return Some(format!("{}: {v}", algo.name()));
        }
        let cut = extract_cut(&store).expect("solved");
        let value = oracle_cut_value(problem, &cut);
        if value != want {
            return Some(format!("{} cut value {value} but flow {want}", algo.name()));
        }
    }
    None
}
