//! Plain-text formats. All labels in these formats are 1-based.
//!
//! Configuration:
//!
//! ```text
//! n d_1 d_2 ... d_n
//! b1 p1 b2 p2        (one line per pair)
//! ```
//!
//! A percolation outcome is the surviving configuration followed by
//!
//! ```text
//! deleted: r_1 r_2 ...   (original bucket labels)
//! census: N_0 N_1 ... N_d
//! ```
//!
//! Edge lists hold one `u v` line per edge (a loop is `u u`), preceded by a
//! `# vertices N` comment so that isolated vertices survive a round trip.
//! Blank lines and lines starting with `#` are otherwise ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::pairing::{Configuration, DegreeSequence, Point};
use crate::percolation::PercolationOutcome;

pub fn write_configuration(config: &Configuration) -> String {
    let mut out = String::new();
    let seq = config.degree_sequence();
    write!(out, "{}", seq.len()).unwrap();
    for d in seq.degrees() {
        write!(out, " {d}").unwrap();
    }
    out.push('\n');
    for (a, b) in config.pairs() {
        writeln!(out, "{} {} {} {}", a.bucket + 1, a.index + 1, b.bucket + 1, b.index + 1).unwrap();
    }
    out
}

pub fn write_outcome(outcome: &PercolationOutcome) -> String {
    let mut out = write_configuration(&outcome.survivor);
    out.push_str("deleted:");
    for b in &outcome.deleted {
        write!(out, " {}", b + 1).unwrap();
    }
    out.push_str("\ncensus:");
    for c in &outcome.census {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
    out
}

/// Contents of a configuration or outcome file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPairing {
    pub configuration: Configuration,
    /// 0-based original labels from a `deleted:` line.
    pub deleted: Option<Vec<u32>>,
    pub census: Option<Vec<usize>>,
}

fn parse_numbers<T: std::str::FromStr>(text: &str, line: usize) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<T>().map_err(|_| Error::Parse { line, msg: format!("bad number {tok:?}") })
        })
        .collect()
}

fn one_based(value: u64, line: usize, what: &str) -> Result<u32> {
    if value == 0 || value > u32::MAX as u64 {
        return Err(Error::Parse { line, msg: format!("{what} {value} is not a 1-based label") });
    }
    Ok((value - 1) as u32)
}

pub fn parse_pairing(text: &str) -> Result<ParsedPairing> {
    let mut seq: Option<DegreeSequence> = None;
    let mut pairs = Vec::new();
    let mut deleted = None;
    let mut census = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("deleted:") {
            let labels: Vec<u64> = parse_numbers(rest, line_no)?;
            deleted = Some(
                labels.into_iter().map(|b| one_based(b, line_no, "bucket")).collect::<Result<_>>()?,
            );
            continue;
        }
        if let Some(rest) = line.strip_prefix("census:") {
            census = Some(parse_numbers(rest, line_no)?);
            continue;
        }
        let nums: Vec<u64> = parse_numbers(line, line_no)?;
        match &seq {
            None => {
                let (&n, degrees) = nums
                    .split_first()
                    .ok_or_else(|| Error::Parse { line: line_no, msg: "empty header".into() })?;
                if degrees.len() as u64 != n {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("header announces {n} buckets but lists {}", degrees.len()),
                    });
                }
                let degrees = degrees
                    .iter()
                    .map(|&d| u32::try_from(d).map_err(|_| Error::Parse { line: line_no, msg: "degree too large".into() }))
                    .collect::<Result<Vec<_>>>()?;
                seq = Some(DegreeSequence::new(degrees)?);
            }
            Some(_) => {
                if nums.len() != 4 {
                    return Err(Error::Parse { line: line_no, msg: "pair lines need 4 numbers".into() });
                }
                let p = |b: u64, q: u64| -> Result<Point> {
                    Ok(Point::new(one_based(b, line_no, "bucket")?, one_based(q, line_no, "point")?))
                };
                pairs.push((p(nums[0], nums[1])?, p(nums[2], nums[3])?));
            }
        }
    }
    let seq = seq.ok_or_else(|| Error::Parse { line: 0, msg: "missing header line".into() })?;
    Ok(ParsedPairing { configuration: Configuration::from_pairs(seq, &pairs)?, deleted, census })
}

pub fn write_edge_list(g: &Multigraph) -> String {
    let mut out = format!("# vertices {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("# vertices") {
            n = Some(rest.trim().parse().map_err(|_| Error::Parse { line: line_no, msg: "bad vertex count".into() })?);
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u64> = parse_numbers(line, line_no)?;
        if nums.len() != 2 {
            return Err(Error::Parse { line: line_no, msg: "edge lines need 2 numbers".into() });
        }
        edges.push((one_based(nums[0], line_no, "vertex")?, one_based(nums[1], line_no, "vertex")?));
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0));
    Multigraph::from_edges(n, edges)
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
