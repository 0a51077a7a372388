//! Problem, cut and statistics files.

mod binary;
mod dimacs;
mod stats;


use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

pub use binary::{is_binary, read_binary, write_binary, ContainerError, MAGIC, VERSION};
pub use dimacs::{
    parse_dimacs, parse_dimacs_with_summary, read_cut, write_cut, write_dimacs, DimacsError,
    DimacsSummary,
};
pub use stats::{write_stats_json, StatsReport};

use crate::graph::Problem;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot open {path}")]
    Open {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}")]
    Dimacs { path: String, source: DimacsError },
    #[error("cannot read {path}")]
    Container {
        path: String,
        source: ContainerError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemFormat {
    Dimacs,
    Binary,
}

/// Reads a problem file, telling the two formats apart by the container magic.
pub fn load_problem(path: &Path) -> Result<Problem, LoadError> {
    let name = || path.display().to_string();
    let file = File::open(path).map_err(|source| LoadError::Open {
        path: name(),
        source,
    })?;
    let mut reader = BufReader::new(file);
    let prefix = reader.fill_buf().map_err(|source| LoadError::Open {
        path: name(),
        source,
    })?;
    if is_binary(prefix) {
        read_binary(reader).map_err(|source| LoadError::Container {
            path: name(),
            source,
        })
    } else {
        parse_dimacs(reader).map_err(|source| LoadError::Dimacs {
            path: name(),
            source,
        })
    }
}

pub fn save_problem(problem: &Problem, path: &Path, format: ProblemFormat) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    match format {
        ProblemFormat::Dimacs => write_dimacs(problem, &mut w)?,
        ProblemFormat::Binary => write_binary(problem, &mut w)?,
    }
    w.flush()
}
