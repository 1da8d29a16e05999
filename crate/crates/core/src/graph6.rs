//! The graph6 text format: `N(n)` size prefix followed by the
//! upper-triangle adjacency bits `x(0,1), x(0,2), x(1,2), x(0,3), ...`
//! packed six per character, each offset by 63.
//!
//! Encoding always uses the shortest size prefix (one character for
//! `n <= 62`, `~` plus three characters up to 258047, `~~` plus six
//! characters beyond), and decoding rejects oversized prefixes, stray
//! bytes, bad lengths, and nonzero padding.

use crate::graph::Graph;
use thiserror::Error;

/// Decode failure with the byte offset of the problem.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph6 parse error at byte {offset}: {reason}")]
pub struct ParseError {
    pub offset: usize,
    pub reason: String,
}

fn bad(offset: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        offset,
        reason: reason.into(),
    }
}

/// Optional line prefix tolerated by [`decode`].
pub const HEADER: &str = ">>graph6<<";

/// Encodes a graph as one graph6 line (no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12u32, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        assert!(
            (n as u64) <= 68_719_476_735,
            "graph6 size prefix caps n at 2^36 - 1"
        );
        bytes.push(126);
        bytes.push(126);
        for shift in [30u32, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n as u32 {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is stripped).
pub fn decode(line: &str) -> Result<Graph, ParseError> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let (body, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest, HEADER.len()),
        None => (line, 0),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(bad(base, "empty line"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(base + i, format!("byte {b} outside graph6 range 63..=126")));
        }
    }

    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as u64, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(bad(base + bytes.len(), "truncated 3-character size prefix"));
        }
        let mut n = 0u64;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - 63) as u64;
        }
        if n <= 62 {
            return Err(bad(base, format!("size {n} must use the 1-character prefix")));
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(bad(base + bytes.len(), "truncated 6-character size prefix"));
        }
        let mut n = 0u64;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - 63) as u64;
        }
        if n <= 258_047 {
            return Err(bad(base, format!("size {n} must use a shorter prefix")));
        }
        (n, 8)
    };
    if n > u32::MAX as u64 {
        return Err(bad(base, format!("size {n} exceeds the supported vertex range")));
    }
    let n = n as usize;

    let bit_count = n * n.saturating_sub(1) / 2;
    let char_count = bit_count.div_ceil(6);
    if bytes.len() - pos != char_count {
        return Err(bad(
            base + bytes.len().min(pos + char_count),
            format!(
                "expected {char_count} adjacency characters for n = {n}, found {}",
                bytes.len() - pos
            ),
        ));
    }

    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut group = 0u8;
    let mut remaining = 0u8;
    let mut cell = {
        let mut pairs = (1..n as u32).flat_map(|j| (0..j).map(move |i| (i, j)));
        move || pairs.next()
    };
    for _ in 0..bit_count {
        if remaining == 0 {
            group = bytes[pos] - 63;
            pos += 1;
            remaining = 6;
        }
        let bit = (group >> 5) & 1;
        group = (group << 1) & 0x3f;
        remaining -= 1;
        let (i, j) = cell().expect("pair stream covers all bits");
        if bit == 1 {
            edges.push((i, j));
        }
    }
    if remaining > 0 && group != 0 {
        return Err(bad(base + pos - 1, "nonzero padding bits"));
    }

    Graph::from_edges(n, &edges).map_err(|e| bad(base, format!("invalid graph: {e}")))
}
