//! Binary problem container.
//!
//! All integers little-endian:
//!
//! | bytes            | field                                        |
//! |------------------|----------------------------------------------|
//! | 8                | magic `BKFLOWP\0`                            |
//! | 4                | version, currently 1                         |
//! | 4                | reserved, zero                               |
//! | 8                | `n`, vertex count                            |
//! | 8                | `e`, edge count                              |
//! | 8 n              | per vertex: `u32` source cap, `u32` sink cap |
//! | 16 e             | per edge: `u32` u, v, cap_uv, cap_vu         |

use std::io::{Read, Write};

use thiserror::Error;

use crate::graph::{Edge, Problem};

pub const MAGIC: [u8; 8] = *b"BKFLOWP\0";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ContainerError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not a problem container")]
    BadMagic,
    #[error("unsupported container version {0}")]
    UnsupportedVersion(u32),
    #[error("container ends early")]
    Truncated,
    #[error("container declares {0} vertices, more than this platform can index")]
    TooLarge(u64),
}

pub fn write_binary<W: Write>(problem: &Problem, mut w: W) -> std::io::Result<()> {
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    w.write_all(&(problem.n as u64).to_le_bytes())?;
    w.write_all(&(problem.edges.len() as u64).to_le_bytes())?;
    for &(cs, ct) in &problem.terminal_caps {
        w.write_all(&cs.to_le_bytes())?;
        w.write_all(&ct.to_le_bytes())?;
    }
    for e in &problem.edges {
        for x in [e.u, e.v, e.cap_uv, e.cap_vu] {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<Problem, ContainerError> {
    let mut magic = [0u8; 8];
    read_exact(&mut r, &mut magic)?;
    if magic != MAGIC {
        return Err(ContainerError::BadMagic);
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(ContainerError::UnsupportedVersion(version));
    }
    read_u32(&mut r)?;
    let n = read_u64(&mut r)?;
    let e = read_u64(&mut r)?;
    let n_usize = usize::try_from(n).map_err(|_| ContainerError::TooLarge(n))?;
    if n > u32::MAX as u64 + 1 {
        return Err(ContainerError::TooLarge(n));
    }
    let mut problem = Problem::new(n_usize);
    for caps in problem.terminal_caps.iter_mut() {
        *caps = (read_u32(&mut r)?, read_u32(&mut r)?);
    }
    // grow as the data arrives rather than trusting the header
    for _ in 0..e {
        let mut rec = [0u8; 16];
        read_exact(&mut r, &mut rec)?;
        let word = |i: usize| u32::from_le_bytes(rec[4 * i..4 * i + 4].try_into().unwrap());
        problem
            .edges
            .push(Edge::new(word(0), word(1), word(2), word(3)));
    }
    Ok(problem)
}

/// Whether `prefix` starts with the container magic.
pub fn is_binary(prefix: &[u8]) -> bool {
    prefix.starts_with(&MAGIC)
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<(), ContainerError> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => ContainerError::Truncated,
        _ => ContainerError::Io(e),
    })
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, ContainerError> {
    let mut b = [0u8; 4];
    read_exact(r, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, ContainerError> {
    let mut b = [0u8; 8];
    read_exact(r, &mut b)?;
    Ok(u64::from_le_bytes(b))
}
