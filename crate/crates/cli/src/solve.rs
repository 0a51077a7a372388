use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::Args;

use bkflow::io::{load_problem, write_cut, write_stats_json};
use bkflow::surface::{extract_surface, write_heightmaps, Dims};

use crate::{run, EngineArgs};

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// DIMACS or binary problem file.
    pub input: PathBuf,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Write the cut, one `<id> <0|1>` line per vertex (0 = source side).
    #[arg(long)]
    pub cut: Option<PathBuf>,
    /// Write run statistics as JSON.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Solve this many times and report median timings.
    #[arg(long, default_value_t = 1)]
    pub repeat: u32,
    /// Treat the problem as a surface stack of these dimensions (XxYxZ) and
    /// write its height maps.
    #[arg(long, requires = "heightmap")]
    pub surface_dims: Option<DimsArg>,
    #[arg(long, default_value_t = 1)]
    pub surfaces: usize,
    #[arg(long, requires = "surface_dims")]
    pub heightmap: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
pub struct DimsArg(pub Dims);

impl FromStr for DimsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<usize> = s
            .split('x')
            .map(|p| p.parse().map_err(|_| format!("bad dimension `{p}`")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [x, y, z] if x > 0 && y > 0 && z > 0 => Ok(DimsArg(Dims::new(x, y, z))),
            _ => Err(format!("expected XxYxZ with positive sizes, got `{s}`")),
        }
    }
}

pub fn run(args: &SolveArgs) -> Result<ExitCode> {
    let problem = load_problem(&args.input)?;
    let measured = run::measure(&problem, &args.engine, args.repeat)?;
    println!("{}", measured.report.flow);
    if let Some(path) = &args.cut {
        write_to(path, |w| write_cut(&measured.cut, w))?;
    }
    if let Some(path) = &args.stats {
        write_to(path, |w| write_stats_json(&measured.report, w))?;
    }
    if let (Some(DimsArg(dims)), Some(path)) = (args.surface_dims, &args.heightmap) {
        let maps = extract_surface(&measured.cut, dims, args.surfaces)
            .context("reading surfaces off the cut")?;
        write_to(path, |w| write_heightmaps(&maps, w))?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn write_to(
    path: &PathBuf,
    f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    f(&mut w)
        .and_then(|_| w.flush())
        .with_context(|| format!("writing {}", path.display()))
}
