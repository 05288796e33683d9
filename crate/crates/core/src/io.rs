//! graph6 and plain edge-list text formats.
//!
//! graph6 follows the published format description: an order header
//! (`63+n` for `n <= 62`, or `126` followed by three 6-bit groups for
//! `63 <= n <= 258047`), then the upper triangle of the adjacency matrix in
//! column-major order, packed six bits per byte, every byte offset by 63.
//!
//! The edge-list format is a whitespace-separated `n m` header followed by
//! `m` vertex pairs.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest order representable with the three-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 258_047;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    EmptyInput,
    #[error("byte {byte:#04x} at position {pos} outside the graph6 range [63,126]")]
    BadCharacter { pos: usize, byte: u8 },
    #[error("malformed graph6 order header")]
    MalformedHeader,
    #[error("truncated graph6 payload: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing data after graph6 payload")]
    TrailingData,
    #[error("graph order {n} exceeds the supported graph6 maximum {max}")]
    UnsupportedOrder { n: usize, max: usize },
    #[error("edge list: expected token {expected}, got {got:?}")]
    BadToken { expected: &'static str, got: String },
    #[error("edge list: header promises {expected} edges, found {got}")]
    EdgeCountMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses a single graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::EmptyInput);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::BadCharacter { pos, byte: b });
        }
    }

    let (n, header_len) = if bytes[0] != 126 {
        (bytes[0] as usize - 63, 1)
    } else {
        // 126 126 introduces the eight-byte header for n > 258047,
        // which is out of the supported range.
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(FormatError::UnsupportedOrder {
                n: usize::MAX,
                max: GRAPH6_MAX_ORDER,
            });
        }
        if bytes.len() < 4 {
            return Err(FormatError::MalformedHeader);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b as usize - 63));
        (n, 4)
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let payload_len = nbits.div_ceil(6);
    let payload = &bytes[header_len..];
    if payload.len() < payload_len {
        return Err(FormatError::Truncated {
            expected: payload_len,
            got: payload.len(),
        });
    }
    if payload.len() > payload_len {
        return Err(FormatError::TrailingData);
    }

    let mut pairs = Vec::new();
    let mut pos = 0usize;
    for v in 1..n {
        for u in 0..v {
            let bit = (payload[pos / 6] - 63) >> (5 - pos % 6) & 1;
            if bit != 0 {
                pairs.push((u, v));
            }
            pos += 1;
        }
    }
    Ok(Graph::from_edge_list(n, pairs)?)
}

/// Writes the canonical graph6 string for `g`.
pub fn write_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= GRAPH6_MAX_ORDER {
        out.push(126);
        out.push((n >> 12 & 0x3f) as u8 + 63);
        out.push((n >> 6 & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    } else {
        return Err(FormatError::UnsupportedOrder {
            n,
            max: GRAPH6_MAX_ORDER,
        });
    }

    let mut acc = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses the `n m` edge-list text format.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut tokens = text.split_whitespace();
    let n = next_usize(&mut tokens, "vertex count")?;
    let m = next_usize(&mut tokens, "edge count")?;
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let u = match tokens.next() {
            Some(t) => parse_usize(t, "vertex")?,
            None => return Err(FormatError::EdgeCountMismatch {
                expected: m,
                got: pairs.len(),
            }),
        };
        let v = next_usize(&mut tokens, "vertex")?;
        pairs.push((u, v));
    }
    if let Some(extra) = tokens.next() {
        return Err(FormatError::BadToken {
            expected: "end of input",
            got: extra.to_string(),
        });
    }
    Ok(Graph::from_edge_list(n, pairs)?)
}

/// Writes the `n m` edge-list text format, one edge per line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn next_usize<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    expected: &'static str,
) -> Result<usize, FormatError> {
    match tokens.next() {
        Some(t) => parse_usize(t, expected),
        None => Err(FormatError::BadToken {
            expected,
            got: String::new(),
        }),
    }
}

fn parse_usize(token: &str, expected: &'static str) -> Result<usize, FormatError> {
    token.parse().map_err(|_| FormatError::BadToken {
        expected,
        got: token.to_string(),
    })
}
