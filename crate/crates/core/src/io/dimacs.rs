//! DIMACS max-flow text format.
//!
//! ```text
//! c comment
//! p max <nodes> <arcs>
//! n <id> s
//! n <id> t
//! a <from> <to> <capacity>
//! ```
//!
//! Node ids run from 1 to `nodes`. The source and sink designators must come
//! before the first arc. Arcs leaving the source and arcs entering the sink
//! become terminal capacities; every other arc becomes an internal edge with
//! zero reverse capacity. Remaining ids are renumbered from 0 in increasing
//! order with the source and sink left out.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::engine::CutAssignment;
use crate::graph::{Problem, Side};

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("no problem line")]
    MissingProblemLine,
    #[error("line {line}: second problem line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: second source designator")]
    MultipleSourceLines { line: usize },
    #[error("line {line}: second sink designator")]
    MultipleSinkLines { line: usize },
    #[error("source or sink designator missing")]
    MissingTerminal,
    #[error("line {line}: node id {id} outside 1..={nodes}")]
    IdOutOfRange { line: usize, id: u64, nodes: u64 },
    #[error("line {line}: negative capacity")]
    NegativeCapacity { line: usize },
    #[error("line {line}: capacity does not fit 32 bits")]
    CapacityTooLarge { line: usize },
    #[error("line {line}: arc enters the source")]
    ArcIntoSource { line: usize },
    #[error("line {line}: arc leaves the sink")]
    ArcOutOfSink { line: usize },
    #[error("line {line}: arc joins the source directly to the sink")]
    SourceSinkArc { line: usize },
}

/// Side information gathered while parsing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DimacsSummary {
    pub declared_nodes: u64,
    pub declared_arcs: u64,
    pub arcs_read: u64,
    pub self_loops_dropped: u64,
}

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<Problem, DimacsError> {
    parse_dimacs_with_summary(reader).map(|(p, _)| p)
}

pub fn parse_dimacs_with_summary<R: BufRead>(
    mut reader: R,
) -> Result<(Problem, DimacsSummary), DimacsError> {
    let mut summary = DimacsSummary::default();
    let mut problem: Option<Problem> = None;
    let mut source: Option<u64> = None;
    let mut sink: Option<u64> = None;
    let mut buf = String::new();
    let mut line = 0usize;

    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        line += 1;
        let mut fields = buf.split_ascii_whitespace();
        let Some(tag) = fields.next() else { continue };
        let syntax = |message: &str| DimacsError::SyntaxError {
            line,
            message: message.to_string(),
        };
        match tag {
            "c" => {}
            "p" => {
                if problem.is_some() {
                    return Err(DimacsError::DuplicateProblemLine { line });
                }
                if fields.next() != Some("max") {
                    return Err(syntax("expected `p max <nodes> <arcs>`"));
                }
                let nodes = number(fields.next(), line)?;
                let arcs = number(fields.next(), line)?;
                if nodes < 2 {
                    return Err(syntax("a max-flow problem needs at least two nodes"));
                }
                summary.declared_nodes = nodes;
                summary.declared_arcs = arcs;
                problem = Some(Problem::new((nodes - 2) as usize));
            }
            "n" => {
                let nodes = declared(&problem, &summary, line)?;
                let id = node_id(fields.next(), nodes, line)?;
                match fields.next() {
                    Some("s") => {
                        if source.replace(id).is_some() {
                            return Err(DimacsError::MultipleSourceLines { line });
                        }
                    }
                    Some("t") => {
                        if sink.replace(id).is_some() {
                            return Err(DimacsError::MultipleSinkLines { line });
                        }
                    }
                    _ => return Err(syntax("expected `n <id> s` or `n <id> t`")),
                }
                if source.is_some() && source == sink {
                    return Err(syntax("source and sink are the same node"));
                }
            }
            "a" => {
                let nodes = declared(&problem, &summary, line)?;
                let (Some(s), Some(t)) = (source, sink) else {
                    return Err(syntax("arc before the source and sink designators"));
                };
                let u = node_id(fields.next(), nodes, line)?;
                let v = node_id(fields.next(), nodes, line)?;
                let cap = capacity(fields.next(), line)?;
                if fields.next().is_some() {
                    return Err(syntax("trailing fields after arc"));
                }
                summary.arcs_read += 1;
                if u == v {
                    summary.self_loops_dropped += 1;
                    continue;
                }
                if v == s {
                    return Err(DimacsError::ArcIntoSource { line });
                }
                if u == t {
                    return Err(DimacsError::ArcOutOfSink { line });
                }
                let remap = |id: u64| (id - 1 - (id > s) as u64 - (id > t) as u64) as u32;
                let p = problem.as_mut().expect("checked above");
                match (u == s, v == t) {
                    (true, true) => return Err(DimacsError::SourceSinkArc { line }),
                    (true, false) => {
                        let c = &mut p.terminal_caps[remap(v) as usize].0;
                        *c = c
                            .checked_add(cap)
                            .ok_or(DimacsError::CapacityTooLarge { line })?;
                    }
                    (false, true) => {
                        let c = &mut p.terminal_caps[remap(u) as usize].1;
                        *c = c
                            .checked_add(cap)
                            .ok_or(DimacsError::CapacityTooLarge { line })?;
                    }
                    (false, false) => p.add_edge(remap(u), remap(v), cap, 0),
                }
            }
            _ => return Err(syntax("unknown line type")),
        }
    }
    let problem = problem.ok_or(DimacsError::MissingProblemLine)?;
    if source.is_none() || sink.is_none() {
        return Err(DimacsError::MissingTerminal);
    }
    Ok((problem, summary))
}

fn declared(
    problem: &Option<Problem>,
    summary: &DimacsSummary,
    line: usize,
) -> Result<u64, DimacsError> {
    match problem {
        Some(_) => Ok(summary.declared_nodes),
        None => Err(DimacsError::SyntaxError {
            line,
            message: "line before the problem line".to_string(),
        }),
    }
}

fn number(field: Option<&str>, line: usize) -> Result<u64, DimacsError> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| DimacsError::SyntaxError {
            line,
            message: "expected a non-negative integer".to_string(),
        })
}

fn node_id(field: Option<&str>, nodes: u64, line: usize) -> Result<u64, DimacsError> {
    let id = number(field, line)?;
    if id == 0 || id > nodes {
        return Err(DimacsError::IdOutOfRange { line, id, nodes });
    }
    Ok(id)
}

fn capacity(field: Option<&str>, line: usize) -> Result<u32, DimacsError> {
    let text = field.ok_or_else(|| DimacsError::SyntaxError {
        line,
        message: "missing capacity".to_string(),
    })?;
    let value: i128 = text.parse().map_err(|_| DimacsError::SyntaxError {
        line,
        message: format!("bad capacity `{text}`"),
    })?;
    if value < 0 {
        return Err(DimacsError::NegativeCapacity { line });
    }
    u32::try_from(value).map_err(|_| DimacsError::CapacityTooLarge { line })
}

/// Writes `problem` with vertices `1..=n`, the source as `n + 1` and the
/// sink as `n + 2`. Zero-capacity arcs are left out.
pub fn write_dimacs<W: Write>(problem: &Problem, mut w: W) -> std::io::Result<()> {
    let n = problem.n as u64;
    let (s, t) = (n + 1, n + 2);
    let terminal_arcs = problem
        .terminal_caps
        .iter()
        .map(|&(a, b)| (a > 0) as u64 + (b > 0) as u64)
        .sum::<u64>();
    let internal_arcs = problem
        .edges
        .iter()
        .map(|e| (e.cap_uv > 0) as u64 + (e.cap_vu > 0) as u64)
        .sum::<u64>();
    writeln!(w, "p max {} {}", n + 2, terminal_arcs + internal_arcs)?;
    writeln!(w, "n {s} s")?;
    writeln!(w, "n {t} t")?;
    for (v, &(cs, ct)) in problem.terminal_caps.iter().enumerate() {
        let id = v as u64 + 1;
        if cs > 0 {
            writeln!(w, "a {s} {id} {cs}")?;
        }
        if ct > 0 {
            writeln!(w, "a {id} {t} {ct}")?;
        }
    }
    for e in &problem.edges {
        let (u, v) = (e.u as u64 + 1, e.v as u64 + 1);
        if e.cap_uv > 0 {
            writeln!(w, "a {u} {v} {}", e.cap_uv)?;
        }
        if e.cap_vu > 0 {
            writeln!(w, "a {v} {u} {}", e.cap_vu)?;
        }
    }
    Ok(())
}

/// One `<id> <side>` line per vertex, side 0 for the source side and 1 for
/// the sink side, after a comment line carrying the flow value.
pub fn write_cut<W: Write>(cut: &CutAssignment, mut w: W) -> std::io::Result<()> {
    writeln!(w, "c flow {}", cut.flow)?;
    for (id, side) in cut.sides.iter().enumerate() {
        let bit = match side {
            Side::Source => 0,
            Side::Sink => 1,
        };
        writeln!(w, "{id} {bit}")?;
    }
    Ok(())
}

/// Reads a file written by [`write_cut`].
pub fn read_cut<R: BufRead>(reader: R) -> Result<CutAssignment, DimacsError> {
    let mut sides = Vec::new();
    let mut flow = 0;
    for (k, text) in reader.lines().enumerate() {
        let text = text?;
        let line = k + 1;
        let syntax = || DimacsError::SyntaxError {
            line,
            message: "expected `<id> <0|1>`".to_string(),
        };
        let mut fields = text.split_ascii_whitespace();
        match fields.next() {
            None => continue,
            Some("c") => {
                if fields.next() == Some("flow") {
                    flow = fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .ok_or_else(syntax)?;
                }
            }
            Some(id) => {
                let id: usize = id.parse().map_err(|_| syntax())?;
                if id != sides.len() {
                    return Err(syntax());
                }
                match fields.next() {
                    Some("0") => sides.push(Side::Source),
                    Some("1") => sides.push(Side::Sink),
                    _ => return Err(syntax()),
                }
            }
        }
    }
    Ok(CutAssignment { sides, flow })
}
