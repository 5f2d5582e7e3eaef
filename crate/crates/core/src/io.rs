//! graph6, edge-list and JSON encodings.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v` (0-based).
//! JSON: `{"n": .., "edges": [[u, v], ..], "bipartition": [0|1, ..] | null}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Side, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Graph6,
    EdgeList,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "g6" | "graph6" => Ok(Format::Graph6),
            "edges" | "edge-list" | "edge_list" => Ok(Format::EdgeList),
            "json" => Ok(Format::Json),
            other => Err(Error::Parameter(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::EdgeList => "edge_list",
            Format::Json => "json",
        })
    }
}

pub fn parse(format: Format, bytes: &[u8]) -> Result<Graph> {
    match format {
        Format::Graph6 => parse_graph6(bytes),
        Format::EdgeList => parse_edge_list(bytes),
        Format::Json => parse_json(bytes),
    }
}

pub fn emit(g: &Graph, format: Format) -> Vec<u8> {
    match format {
        Format::Graph6 => {
            let mut out = to_graph6(g).into_bytes();
            out.push(b'\n');
            out
        }
        Format::EdgeList => to_edge_list(g).into_bytes(),
        Format::Json => {
            let mut out = to_json(g).into_bytes();
            out.push(b'\n');
            out
        }
    }
}

/// Guesses the format: `{` starts JSON, a leading `n m` line is an edge
/// list, anything else is graph6.
pub fn detect_format(bytes: &[u8]) -> Format {
    let trimmed = bytes.trim_ascii_start();
    if trimmed.first() == Some(&b'{') {
        return Format::Json;
    }
    let first_line = trimmed.split(|&b| b == b'\n').next().unwrap_or(&[]);
    let fields: Vec<&[u8]> = first_line
        .split(|b| b.is_ascii_whitespace())
        .filter(|f| !f.is_empty())
        .collect();
    if fields.len() == 2 && fields.iter().all(|f| f.iter().all(u8::is_ascii_digit)) {
        Format::EdgeList
    } else {
        Format::Graph6
    }
}

pub fn parse_auto(bytes: &[u8]) -> Result<Graph> {
    parse(detect_format(bytes), bytes)
}

// graph6 ------------------------------------------------------------------

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_sextets(&mut out, n as u64, 3);
    } else {
        out.push(126);
        out.push(126);
        push_sextets(&mut out, n as u64, 6);
    }

    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        // Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
        let k = v * (v - 1) / 2 + u;
        packed[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(packed.iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

fn push_sextets(out: &mut Vec<u8>, value: u64, count: u32) {
    for i in (0..count).rev() {
        out.push(((value >> (6 * i)) & 0x3f) as u8 + 63);
    }
}

pub fn parse_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut start = 0;
    while start < bytes.len() && bytes[start].is_ascii_whitespace() {
        start += 1;
    }
    if bytes[start..].starts_with(GRAPH6_HEADER) {
        start += GRAPH6_HEADER.len();
    }
    let mut end = bytes.len();
    while end > start && bytes[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let body = &bytes[start..end];
    let at = |i: usize| start + i;

    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(at(i), format!("byte {b:#04x} outside graph6 range")));
        }
    }
    if body.is_empty() {
        return Err(Error::parse(at(0), "empty graph6 string"));
    }

    let read_sextets = |from: usize, count: usize| -> Result<usize> {
        if body.len() < from + count {
            return Err(Error::parse(at(body.len()), "truncated vertex count"));
        }
        Ok(body[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, mut pos) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.get(1) != Some(&126) {
        (read_sextets(1, 3)?, 4)
    } else {
        (read_sextets(2, 6)?, 8)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let have = body.len() - pos;
    if have != need {
        return Err(Error::parse(
            at(pos + have.min(need)),
            format!("expected {need} adjacency bytes for {n} vertices, found {have}"),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            if k >= bits {
                break 'outer;
            }
            let byte = body[pos + k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    pos += need;
    debug_assert_eq!(pos, body.len());
    Graph::from_edges(n, edges).map_err(|e| Error::parse(at(0), e.to_string()))
}

// edge list ---------------------------------------------------------------

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_edge_list(bytes: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::parse(e.valid_up_to(), "not UTF-8"))?;

    // (offset of line start, fields)
    let mut lines = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if !fields.is_empty() {
            lines.push((offset, fields));
        }
        offset += line.len();
    }

    let number = |off: usize, s: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| Error::parse(off, format!("expected a non-negative integer, found {s:?}")))
    };

    let mut iter = lines.into_iter();
    let (off, header) = iter.next().ok_or_else(|| Error::parse(0, "missing `n m` header"))?;
    if header.len() != 2 {
        return Err(Error::parse(off, "header must be `n m`"));
    }
    let n = number(off, header[0])?;
    let m = number(off, header[1])?;

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    for (off, fields) in iter {
        if fields.len() != 2 {
            return Err(Error::parse(off, "edge line must be `u v`"));
        }
        let u = number(off, fields[0])?;
        let v = number(off, fields[1])?;
        if u >= n || v >= n {
            return Err(Error::parse(off, format!("vertex out of range for n = {n}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            bytes.len(),
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges).map_err(|e| Error::parse(0, e.to_string()))
}

// JSON --------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    bipartition: Option<Vec<u8>>,
}

fn graph_json(g: &Graph) -> GraphJson {
    GraphJson {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        bipartition: g
            .bipartition()
            .map(|sides| sides.iter().map(|s| s.as_bit()).collect()),
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&graph_json(g)).expect("graph JSON is serialisable")
}

pub fn graph_to_value(g: &Graph) -> serde_json::Value {
    serde_json::to_value(graph_json(g)).expect("graph JSON is serialisable")
}

pub fn parse_json(bytes: &[u8]) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_slice(bytes).map_err(|e| {
        // serde_json reports line/column; convert to a byte offset.
        let offset = line_col_offset(bytes, e.line(), e.column());
        Error::parse(offset, e.to_string())
    })?;
    let g = Graph::from_edges(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
        .map_err(|e| Error::parse(0, e.to_string()))?;
    match doc.bipartition {
        None => Ok(g),
        Some(bits) => {
            let sides = bits
                .into_iter()
                .map(|b| Side::from_bit(b).ok_or_else(|| Error::parse(0, "bipartition labels must be 0 or 1")))
                .collect::<Result<Vec<_>>>()?;
            g.with_bipartition(sides).map_err(|e| Error::parse(0, e.to_string()))
        }
    }
}

fn line_col_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let mut offset = 0;
    for (i, l) in bytes.split_inclusive(|&b| b == b'\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len();
    }
    bytes.len()
}
