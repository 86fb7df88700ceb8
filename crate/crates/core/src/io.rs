//! Text formats for graphs and partitions.
//!
//! Edge list:
//!
//! ```text
//! # n=<n> q=<q> seed=<seed>
//! 0 5
//! 0 17
//! ...
//! ```
//!
//! One `i j` pair per line with `i < j`, 0-indexed, in lexicographic order.
//! Partition files hold one decimal label per line.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sbm::Partition;

/// Metadata carried in the edge-list header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeListHeader {
    pub n: usize,
    pub q: usize,
    pub seed: u64,
}

pub fn write_edge_list<W: Write>(out: &mut W, graph: &Graph, header: EdgeListHeader) -> Result<()> {
    writeln!(out, "# n={} q={} seed={}", header.n, header.q, header.seed)?;
    for (i, j) in graph.edges() {
        writeln!(out, "{i} {j}")?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<(Graph, EdgeListHeader)> {
    let mut lines = input.lines();
    let first = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })??;
    let header = parse_header(&first)?;
    let mut edges = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let lineno = idx + 2;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut it = trimmed.split_ascii_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected `i j`, got {trimmed:?}"),
            });
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("{s:?}: {e}"),
            })
        };
        let (i, j) = (parse(a)?, parse(b)?);
        if i >= j {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("edge ({i}, {j}) must satisfy i < j"),
            });
        }
        edges.push((i, j));
    }
    let graph = Graph::from_edges(header.n, &edges)?;
    Ok((graph, header))
}

fn parse_header(line: &str) -> Result<EdgeListHeader> {
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let body = line
        .strip_prefix('#')
        .ok_or_else(|| bad(format!("header must start with '#', got {line:?}")))?;
    let (mut n, mut q, mut seed) = (None, None, None);
    for field in body.split_ascii_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("malformed header field {field:?}")))?;
        let num = |v: &str| v.parse::<u64>().map_err(|e| bad(format!("{key}: {e}")));
        match key {
            "n" => n = Some(num(value)? as usize),
            "q" => q = Some(num(value)? as usize),
            "seed" => seed = Some(num(value)?),
            _ => return Err(bad(format!("unknown header key {key:?}"))),
        }
    }
    match (n, q, seed) {
        (Some(n), Some(q), Some(seed)) => Ok(EdgeListHeader { n, q, seed }),
        _ => Err(bad("header needs n, q and seed".into())),
    }
}

pub fn write_partition<W: Write>(out: &mut W, partition: &Partition) -> Result<()> {
    for &l in partition.labels() {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

/// Reads a partition file. `q` defaults to one more than the largest label.
pub fn read_partition<R: BufRead>(input: R, q: Option<usize>) -> Result<Partition> {
    let mut labels = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        labels.push(trimmed.parse::<usize>().map_err(|e| Error::Parse {
            line: idx + 1,
            msg: format!("{trimmed:?}: {e}"),
        })?);
    }
    let q = q.unwrap_or_else(|| labels.iter().max().map_or(1, |&m| m + 1));
    Partition::new(labels, q)
}
