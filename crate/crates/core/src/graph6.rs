//! graph6 encoding of simple undirected graphs.
//!
//! A graph6 line is `N(n)` followed by the upper triangle of the adjacency
//! matrix read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed
//! six bits per byte, high bit first, zero-padded, each byte offset by 63.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Optional header some tools put in front of graph6 files.
pub const HEADER: &str = ">>graph6<<";

const BIAS: u8 = 63;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + BIAS);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + BIAS);
        }
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored.
pub fn decode(line: &str) -> Result<Graph> {
    let line = line.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(malformed(format!("character {:?} at offset {pos} out of range", bytes[pos] as char)));
    }
    let (n, body) = decode_size(bytes)?;
    if n == 0 {
        return Err(malformed("graph has no vertices"));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(format!("expected {expected} data bytes for n = {n}, found {}", body.len())));
    }
    let pad = expected * 6 - bits;
    if let Some(&last) = body.last() {
        if (last - BIAS) & ((1u8 << pad) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
    match bytes {
        [] => Err(malformed("empty line")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(malformed("truncated 8-byte size prefix"));
            }
            let n = six(&rest[..6]);
            if n <= 258_047 {
                return Err(malformed("non-minimal size prefix"));
            }
            Ok((n, &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(malformed("truncated 4-byte size prefix"));
            }
            let n = six(&rest[..3]);
            if n <= 62 {
                return Err(malformed("non-minimal size prefix"));
            }
            Ok((n, &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - BIAS) as usize, rest)),
    }
}
