use std::io::{stdout, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Args;

use bkflow::io::{write_binary, write_dimacs};
use bkflow::oracle::{differential_instance, gen_random};
use bkflow::surface::{
    build_multi_surface, build_single_surface, read_volume, synth_volume, write_heightmaps,
    MarginSpec,
};
use bkflow::Problem;

use crate::solve::{write_to, DimsArg};
use crate::FormatArg;

#[derive(Args, Debug)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertex count. Without `--n` and `--m` the seed picks an instance of
    /// the differential family used by `check`.
    #[arg(long, requires = "m")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub cap_max: u32,
    /// Probability that a vertex gets each terminal capacity.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Dimacs)]
    pub format: FormatArg,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    /// Synthesise volumes with planted surfaces of these dimensions (XxYxZ).
    #[arg(long, conflicts_with = "volume", required_unless_present = "volume")]
    pub synth: Option<DimsArg>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest step of the planted surface between neighbouring columns.
    #[arg(long, default_value_t = 1)]
    pub delta_truth: usize,
    /// Number of synthetic surfaces; volume `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 1)]
    pub surfaces: usize,
    /// Raw volume file with a `.json` sidecar; repeat for several surfaces.
    #[arg(long)]
    pub volume: Vec<PathBuf>,
    /// Smoothness bound. Defaults to `--delta-truth`.
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub margin_min: usize,
    /// Defaults to Z - 1.
    #[arg(long)]
    pub margin_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Binary)]
    pub format: FormatArg,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Write the planted height maps (synthetic volumes only).
    #[arg(long, requires = "synth")]
    pub truth: Option<PathBuf>,
}

pub fn run_random(args: &RandomArgs) -> Result<ExitCode> {
    let problem = match (args.n, args.m) {
        (Some(n), Some(m)) => {
            if n == 0 {
                bail!("--n must be positive");
            }
            if !(0.0..=1.0).contains(&args.density) {
                bail!("--density must lie in [0, 1]");
            }
            gen_random(args.seed, n, m, args.cap_max, args.density)
        }
        _ => differential_instance(args.seed),
    };
    emit(&problem, args.format, args.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn run_surface(args: &SurfaceArgs) -> Result<ExitCode> {
    let (volumes, truths) = match args.synth {
        Some(DimsArg(dims)) => {
            if args.surfaces == 0 {
                bail!("--surfaces must be positive");
            }
            if dims.z < 2 {
                bail!("synthetic volumes need Z >= 2");
            }
            (0..args.surfaces as u64)
                .map(|i| synth_volume(args.seed + i, dims, args.delta_truth))
                .unzip()
        }
        None => {
            let vols = args
                .volume
                .iter()
                .map(|p| read_volume(p).with_context(|| format!("reading {}", p.display())))
                .collect::<Result<Vec<_>>>()?;
            (vols, Vec::new())
        }
    };
    let delta = args.delta.unwrap_or(args.delta_truth);
    let problem = if volumes.len() == 1 {
        build_single_surface(&volumes[0], delta)?
    } else {
        let z = volumes[0].dims().z;
        let margins = MarginSpec {
            min: args.margin_min,
            max: args.margin_max.unwrap_or(z.saturating_sub(1)),
        };
        build_multi_surface(&volumes, delta, margins)?
    };
    emit(&problem, args.format, Some(&args.output))?;
    if let Some(path) = &args.truth {
        write_to(path, |w| write_heightmaps(&truths, w))?;
    }
    eprintln!("{} vertices, {} edges", problem.n, problem.edges.len());
    Ok(ExitCode::SUCCESS)
}

fn emit(problem: &Problem, format: FormatArg, output: Option<&PathBuf>) -> Result<()> {
    let write = |w: &mut dyn Write| match format {
        FormatArg::Dimacs => write_dimacs(problem, w),
        FormatArg::Binary => write_binary(problem, w),
    };
    match output {
        Some(path) => write_to(path, |w| write(w)),
        None => {
            let mut w = BufWriter::new(stdout().lock());
            write(&mut w)
                .and_then(|_| w.flush())
                .context("writing to standard output")
        }
    }
}
