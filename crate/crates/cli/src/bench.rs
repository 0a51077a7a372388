use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use bkflow::io::{load_problem, StatsReport};
use bkflow::memory::{comparison, FootprintRow};

use crate::solve::write_to;
use crate::{run, EngineArgs};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Problem files, run one after another.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Runs per file; timings are medians.
    #[arg(long, default_value_t = 5)]
    pub repeat: u32,
    /// Write the rows as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Serialize)]
struct Row {
    file: String,
    #[serde(flatten)]
    report: StatsReport,
    /// Bytes other layouts would need for the same graph, by formula.
    footprints: Vec<FootprintRow>,
}

#[derive(Serialize)]
struct Failure {
    file: String,
    error: String,
}

#[derive(Serialize)]
struct BenchReport {
    rows: Vec<Row>,
    failures: Vec<Failure>,
}

pub fn run(args: &BenchArgs) -> Result<ExitCode> {
    let mut out = BenchReport {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    for path in &args.files {
        let file = path.display().to_string();
        let outcome = load_problem(path)
            .map_err(anyhow::Error::from)
            .and_then(|p| run::measure(&p, &args.engine, args.repeat));
        match outcome {
            Ok(m) => {
                let footprints = comparison(m.report.n, m.report.m_i);
                out.rows.push(Row {
                    file,
                    report: m.report,
                    footprints,
                });
            }
            Err(e) => {
                eprintln!("{e:#}");
                out.failures.push(Failure {
                    file,
                    error: format!("{e:#}"),
                });
            }
        }
    }
    print_table(&out.rows, args.repeat);
    if let Some(path) = &args.json {
        write_to(path, |w| {
            serde_json::to_writer_pretty(&mut *w, &out)?;
            writeln!(w)
        })?;
    }
    Ok(if out.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn print_table(rows: &[Row], repeat: u32) {
    println!("median of {repeat} runs");
    println!(
        "{:<28} {:>10} {:>11} {:>11} {:>14} {:>10} {:>10} {:>10} {:>12}",
        "file", "n", "m_i+", "m_i", "flow", "build ms", "solve ms", "total ms", "memory B"
    );
    for r in rows {
        let ms = |s: f64| format!("{:.3}", s * 1e3);
        println!(
            "{:<28} {:>10} {:>11} {:>11} {:>14} {:>10} {:>10} {:>10} {:>12}",
            short(&r.file),
            r.report.n,
            r.report.m_i_plus,
            r.report.m_i,
            r.report.flow,
            ms(r.report.build_seconds),
            ms(r.report.solve_seconds),
            ms(r.report.total_seconds),
            r.report.memory_bytes,
        );
    }
    if rows.is_empty() {
        return;
    }
    println!();
    println!("graph bytes by layout (formula, not measured)");
    println!(
        "{:<28} {:<8} {:>14} {:>14} {:>14}",
        "file", "layout", "small", "large", "extra-large"
    );
    for r in rows {
        for f in &r.footprints {
            println!(
                "{:<28} {:<8} {:>14} {:>14} {:>14}",
                short(&r.file),
                f.layout,
                f.small,
                f.large,
                f.extra_large
            );
        }
    }
}

fn short(file: &str) -> &str {
    let tail = file.len().saturating_sub(28);
    file.get(tail..).unwrap_or(file)
}
