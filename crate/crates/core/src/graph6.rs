//! graph6 encoding and a plain edge-list text format.
//!
//! graph6: size byte `n + 63` followed by the upper triangle of the adjacency
//! matrix read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed
//! six bits per byte, most significant bit first, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push(((acc << (6 - k)) + 63) as char);
    }
    out
}

/// Decodes one graph6 string; an optional `>>graph6<<` header and trailing
/// whitespace are accepted. Byte offsets in errors refer to the input as given.
pub fn decode(s: &str) -> Result<Graph> {
    let trimmed = s.trim_end();
    let (body, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (trimmed.as_bytes(), 0),
    };
    if body.is_empty() {
        return Err(Error::parse(base, "empty graph6 string"));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let (n, mut pos) = if body[0] < 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.len() >= 4 && body[1] < 126 {
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    } else {
        return Err(Error::parse(base, "vertex count beyond supported range"));
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if body.len() - pos != nbytes {
        return Err(Error::parse(
            base + body.len().min(pos + nbytes),
            format!("expected {nbytes} adjacency bytes for n={n}, found {}", body.len() - pos),
        ));
    }
    let mut adj = vec![0u64; n];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[pos + bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[pos + nbytes - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(base + pos + nbytes - 1, "non-zero padding bits"));
        }
    }
    pos += nbytes;
    debug_assert_eq!(pos, body.len());
    Ok(Graph::from_rows_unchecked(adj))
}

/// Parses the edge-list text format: a header line `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut offset = 0;
    let mut lines = Vec::new();
    for line in text.split_inclusive('\n') {
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            lines.push((offset, t));
        }
        offset += line.len();
    }
    let mut it = lines.into_iter();
    let (off, header) = it
        .next()
        .ok_or_else(|| Error::parse(0, "missing 'n m' header"))?;
    let nums = parse_pair(off, header)?;
    let (n, m) = (nums.0, nums.1);
    let mut edges = Vec::with_capacity(m);
    for (off, line) in it {
        let (u, v) = parse_pair(off, line)?;
        if u >= n || v >= n || u == v {
            return Err(Error::parse(off, format!("invalid edge {u} {v} for n={n}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            text.len(),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let g = Graph::from_edges(n, &edges)?;
    if g.m() != m {
        return Err(Error::parse(off, "duplicate edges"));
    }
    Ok(g)
}

fn parse_pair(off: usize, line: &str) -> Result<(usize, usize)> {
    let mut parts = line.split_whitespace();
    let mut next = || -> Result<usize> {
        parts
            .next()
            .ok_or_else(|| Error::parse(off, "expected two integers"))?
            .parse()
            .map_err(|_| Error::parse(off, format!("bad integer in '{line}'")))
    };
    let a = next()?;
    let b = next()?;
    if parts.next().is_some() {
        return Err(Error::parse(off, format!("trailing tokens in '{line}'")));
    }
    Ok((a, b))
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
