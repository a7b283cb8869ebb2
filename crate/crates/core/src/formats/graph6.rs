//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per byte with an
//! offset of 63.

use thiserror::Error;

use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_BYTE: u8 = 126;
const HEADER_PREFIX: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 header: {0}")]
    MalformedHeader(&'static str),
    #[error("truncated graph6 payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("byte {byte:#04x} at position {position} is outside the graph6 range 63..=126")]
    ByteOutOfRange { position: usize, byte: u8 },
    #[error("graph6 payload has {0} trailing bytes")]
    TrailingBytes(usize),
}

/// Largest vertex count the format can express.
pub const MAX_VERTICES: usize = (1 << 36) - 1;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    assert!(n <= MAX_VERTICES, "graph6 cannot encode {n} vertices");
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(MAX_BYTE);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    } else {
        out.push(MAX_BYTE);
        out.push(MAX_BYTE);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
}

/// Encodes `g` without a trailing newline.
pub fn emit_graph6(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    out
}

pub fn emit_graph6_string(g: &Graph) -> String {
    String::from_utf8(emit_graph6(g)).expect("graph6 output is ASCII")
}

/// Parses one graph6 record. An optional `>>graph6<<` prefix and a trailing
/// line terminator are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let mut body = text.strip_prefix(HEADER_PREFIX).unwrap_or(text);
    while let Some(rest) = body
        .strip_suffix(b"\n")
        .or_else(|| body.strip_suffix(b"\r"))
    {
        body = rest;
    }
    let base = text.len()
        - text
            .strip_prefix(HEADER_PREFIX)
            .map_or(text.len(), <[u8]>::len);

    if let Some((pos, &byte)) = body
        .iter()
        .enumerate()
        .find(|&(_, &b)| !(OFFSET..=MAX_BYTE).contains(&b))
    {
        if pos == 0 && (byte == b':' || byte == b'&') {
            return Err(Graph6Error::MalformedHeader(
                "sparse6/digraph6 input is not graph6",
            ));
        }
        return Err(Graph6Error::ByteOutOfRange {
            position: base + pos,
            byte,
        });
    }

    let (n, payload) = decode_size(body)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingBytes(payload.len() - expected));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - OFFSET;
            if byte & (0x20 >> (k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("upper-triangle edges are simple"))
}

fn decode_size(body: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    let sextets = |bytes: &[u8]| {
        bytes
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - OFFSET))
    };
    match body {
        [] => Err(Graph6Error::MalformedHeader("missing size byte")),
        [MAX_BYTE, MAX_BYTE, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Graph6Error::MalformedHeader("incomplete 8-byte size"));
            }
            Ok((sextets(&rest[..6]), &rest[6..]))
        }
        [MAX_BYTE, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::MalformedHeader("incomplete 4-byte size"));
            }
            Ok((sextets(&rest[..3]), &rest[3..]))
        }
        [first, rest @ ..] => Ok((usize::from(first - OFFSET), rest)),
    }
}
