//! graph6 text format, short form only (n <= 62).
//!
//! One graph per line: a size byte `n + 63`, then the upper triangle of the
//! adjacency matrix in column-major order, packed six bits per byte (most
//! significant first) with zero padding, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count representable by the short form.
pub const MAX_GRAPH6: usize = 62;

/// Encodes a graph as a graph6 line (without trailing newline).
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6 {
        return Err(Error::Size {
            what: "graph6 encoding",
            needed: n,
            limit: MAX_GRAPH6,
        });
    }
    let mut out = Vec::new();
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(63 + acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(63 + (acc << (6 - nbits)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 line. A trailing newline (or CRLF) is tolerated.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            reason: "empty input".into(),
        });
    }
    let header = bytes[0];
    if header == 126 {
        // The long form (">62 vertices") starts with '~'.
        return Err(Error::Parse {
            offset: 0,
            reason: "long-form header '~' not supported (n > 62)".into(),
        });
    }
    if !(63..=63 + MAX_GRAPH6 as u8).contains(&header) {
        return Err(Error::Parse {
            offset: 0,
            reason: format!("invalid size byte {header}"),
        });
    }
    let n = (header - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(Error::Parse {
            offset: bytes.len().min(1 + nbytes),
            reason: format!(
                "expected {} data bytes for n={n}, got {}",
                nbytes,
                bytes.len() - 1
            ),
        });
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    'cols: for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Parse {
                    offset: 1 + bit / 6,
                    reason: format!("data byte {byte} outside graph6 range"),
                });
            }
            let value = (byte - 63) >> (5 - bit % 6) & 1;
            if value == 1 {
                edges.push((i, j));
            }
            bit += 1;
            if bit == nbits {
                break 'cols;
            }
        }
    }
    // Trailing padding bits must be zero.
    if !nbits.is_multiple_of(6) {
        let last = bytes[1 + nbytes - 1];
        if !(63..=126).contains(&last) {
            return Err(Error::Parse {
                offset: nbytes,
                reason: format!("data byte {last} outside graph6 range"),
            });
        }
        let pad = 6 - nbits % 6;
        if (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(Error::Parse {
                offset: nbytes,
                reason: "nonzero padding bits".into(),
            });
        }
    }
    Graph::from_edges(n, &edges)
}
