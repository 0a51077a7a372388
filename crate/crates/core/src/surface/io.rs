//! Volume and height-map files.
//!
//! A volume is a raw little-endian voxel file, `x` fastest, then `y`, then
//! `z`, next to a JSON sidecar named like the raw file with `.json`
//! appended:
//!
//! ```json
//! {"x": 6, "y": 6, "z": 6, "dtype": "u8", "excluded": [[0, 3]]}
//! ```
//!
//! `dtype` is one of `u8`, `u16`, `i16`, `i32`; `excluded` lists excluded
//! columns and may be omitted.
//!
//! Height maps are text grids, one line per `y`, heights separated by
//! spaces, `-` for a column without a surface. Several maps are separated by
//! a blank line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CostVolume, Dims, HeightMap};

#[derive(Debug, Error)]
pub enum VolumeError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("sidecar: {0}")]
    Sidecar(#[from] serde_json::Error),
    #[error("raw file holds {found} bytes, expected {expected}")]
    SizeMismatch { expected: u64, found: u64 },
    #[error("excluded column ({0}, {1}) lies outside the volume")]
    ExcludedOutOfRange(usize, usize),
    #[error("height map line {line}: {message}")]
    HeightMap { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dtype {
    U8,
    U16,
    I16,
    I32,
}

impl Dtype {
    fn width(self) -> usize {
        match self {
            Dtype::U8 => 1,
            Dtype::U16 | Dtype::I16 => 2,
            Dtype::I32 => 4,
        }
    }

    fn decode(self, b: &[u8]) -> i32 {
        match self {
            Dtype::U8 => b[0] as i32,
            Dtype::U16 => u16::from_le_bytes([b[0], b[1]]) as i32,
            Dtype::I16 => i16::from_le_bytes([b[0], b[1]]) as i32,
            Dtype::I32 => i32::from_le_bytes([b[0], b[1], b[2], b[3]]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeHeader {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub dtype: Dtype,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<(usize, usize)>,
}

pub fn sidecar_path(raw: &Path) -> PathBuf {
    let mut name = raw.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

pub fn read_volume(raw: &Path) -> Result<CostVolume, VolumeError> {
    let header: VolumeHeader =
        serde_json::from_reader(BufReader::new(File::open(sidecar_path(raw))?))?;
    let dims = Dims::new(header.x, header.y, header.z);
    let width = header.dtype.width();
    let expected = (dims.voxels() * width) as u64;
    let found = std::fs::metadata(raw)?.len();
    if found != expected {
        return Err(VolumeError::SizeMismatch { expected, found });
    }
    let mut bytes = Vec::with_capacity(expected as usize);
    BufReader::new(File::open(raw)?).read_to_end(&mut bytes)?;
    let costs = bytes
        .chunks_exact(width)
        .map(|b| header.dtype.decode(b))
        .collect();
    let mut volume = CostVolume::from_costs(dims, costs);
    for &(x, y) in &header.excluded {
        if x >= dims.x || y >= dims.y {
            return Err(VolumeError::ExcludedOutOfRange(x, y));
        }
        volume.exclude(x, y);
    }
    Ok(volume)
}

/// Writes `volume` as `i32` voxels plus its sidecar.
pub fn write_volume(volume: &CostVolume, raw: &Path) -> Result<(), VolumeError> {
    let dims = volume.dims();
    let mut w = BufWriter::new(File::create(raw)?);
    for &c in volume.costs() {
        w.write_all(&c.to_le_bytes())?;
    }
    w.flush()?;
    let excluded = (0..dims.y)
        .flat_map(|y| (0..dims.x).map(move |x| (x, y)))
        .filter(|&(x, y)| volume.is_excluded(x, y))
        .collect();
    let header = VolumeHeader {
        x: dims.x,
        y: dims.y,
        z: dims.z,
        dtype: Dtype::I32,
        excluded,
    };
    serde_json::to_writer_pretty(File::create(sidecar_path(raw))?, &header)?;
    Ok(())
}

pub fn write_heightmaps<W: Write>(maps: &[HeightMap], mut w: W) -> std::io::Result<()> {
    for (i, map) in maps.iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        for y in 0..map.y {
            let row: Vec<String> = (0..map.x)
                .map(|x| {
                    map.get(x, y)
                        .map_or_else(|| "-".to_string(), |h| h.to_string())
                })
                .collect();
            writeln!(w, "{}", row.join(" "))?;
        }
    }
    Ok(())
}

pub fn read_heightmaps<R: BufRead>(reader: R) -> Result<Vec<HeightMap>, VolumeError> {
    let mut grids: Vec<Vec<Vec<Option<usize>>>> = vec![Vec::new()];
    for (k, text) in reader.lines().enumerate() {
        let text = text?;
        let line = k + 1;
        if text.trim().is_empty() {
            if !grids.last().expect("never empty").is_empty() {
                grids.push(Vec::new());
            }
            continue;
        }
        let row = text
            .split_ascii_whitespace()
            .map(|f| match f {
                "-" => Ok(None),
                _ => f.parse().map(Some).map_err(|_| VolumeError::HeightMap {
                    line,
                    message: format!("bad height `{f}`"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let grid = grids.last_mut().expect("never empty");
        if grid.first().is_some_and(|r| r.len() != row.len()) {
            return Err(VolumeError::HeightMap {
                line,
                message: "row length differs from the first row".to_string(),
            });
        }
        grid.push(row);
    }
    Ok(grids
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let mut map = HeightMap::new(g[0].len(), g.len());
            for (y, row) in g.into_iter().enumerate() {
                for (x, h) in row.into_iter().enumerate() {
                    map.set(x, y, h);
                }
            }
            map
        })
        .collect())
}
