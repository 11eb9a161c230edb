//! graph6 and plain edge-list text formats.
//!
//! graph6: an optional `>>graph6<<` header, the order encoded as one byte
//! `n + 63` (n ≤ 62) or `126` followed by three 6-bit bytes, then the upper
//! triangle of the adjacency matrix in column order (`(0,1), (0,2), (1,2),
//! (0,3), ...`) packed big-endian into 6-bit groups, each byte offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("byte {value} at offset {offset} is outside the printable range 63..=126")]
    BadByte { offset: usize, value: u8 },
    #[error("empty graph6 string")]
    Empty,
    #[error("expected {expected} adjacency bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{found} trailing bytes after the adjacency data")]
    Trailing { found: usize },
    #[error("graph order {0} is not supported (maximum {MAX_VERTICES})")]
    TooLarge(usize),
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check(offset: usize, value: u8) -> Result<u8, FormatError> {
    if (63..=126).contains(&value) {
        Ok(value - 63)
    } else {
        Err(FormatError::BadByte { offset, value })
    }
}

/// Parses one graph6 record. Surrounding ASCII whitespace is ignored.
pub fn parse_graph6(input: &[u8]) -> Result<Graph, FormatError> {
    let mut bytes = input.trim_ascii();
    let mut base = input.len() - input.trim_ascii_start().len();
    if bytes.starts_with(HEADER) {
        bytes = &bytes[HEADER.len()..];
        base += HEADER.len();
    }
    let first = *bytes.first().ok_or(FormatError::Empty)?;
    let (n, body_start) = if first == 126 {
        if bytes.get(1) == Some(&126) {
            // 8-byte form, only for n > 258047.
            return Err(FormatError::TooLarge(usize::MAX));
        }
        if bytes.len() < 4 {
            return Err(FormatError::Truncated {
                expected: 3,
                found: bytes.len() - 1,
            });
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | check(base + 1 + i, b)? as usize;
        }
        (n, 4)
    } else {
        (check(base, first)? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(FormatError::TooLarge(n));
    }
    let body = &bytes[body_start..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(FormatError::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(FormatError::Trailing {
            found: body.len() - expected,
        });
    }
    let mut adj = vec![VertexSet::EMPTY; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = check(base + body_start + k / 6, body[k / 6])?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    // Padding bytes still have to be printable.
    for (i, &b) in body.iter().enumerate() {
        check(base + body_start + i, b)?;
    }
    Ok(Graph::from_adjacency(adj)?)
}

/// Encodes without header or trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses `n m` followed by `m` lines `u v`. Blank lines and `#` comments are
/// skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, reason: &str| FormatError::EdgeList {
        line,
        reason: reason.to_string(),
    };
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header"))?;
    let nums = parse_pair(header).ok_or_else(|| err(hline, "header must be `n m`"))?;
    let (n, m) = nums;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = parse_pair(l).ok_or_else(|| err(line, "expected `u v`"))?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(
            hline,
            &format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, &edges)?)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    let a = it.next()?.ok()?;
    let b = it.next()?.ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_hand_encoding() {
        // Upper triangle in column order: 01 02 12 03 13 23 -> 1 0 1 1 0 1.
        let c4 = Graph::cycle(4).unwrap();
        let expected = [4 + 63, 0b101101 + 63];
        assert_eq!(write_graph6(&c4).as_bytes(), expected);
        assert_eq!(write_graph6(&c4), "Cl");
    }

    #[test]
    fn claw_round_trip_and_header() {
        let claw = Graph::star(3).unwrap();
        let s = write_graph6(&claw);
        assert_eq!(s, "Cs");
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), claw);
        assert_eq!(parse_graph6(b">>graph6<<Cs\n").unwrap(), claw);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_graph6(&[b'C', 30]),
            Err(FormatError::BadByte { value: 30, .. })
        ));
        assert!(matches!(
            parse_graph6(b"D"),
            Err(FormatError::Truncated { .. })
        ));
        assert!(matches!(
            parse_graph6(b"Clll"),
            Err(FormatError::Trailing { .. })
        ));
        assert_eq!(parse_graph6(b"  "), Err(FormatError::Empty));
        assert!(matches!(
            parse_graph6(&[127]),
            Err(FormatError::BadByte { .. })
        ));
    }

    #[test]
    fn large_order_uses_escape() {
        let g = Graph::path(100).unwrap();
        let s = write_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn edge_list() {
        let g = parse_edge_list("# claw\n4 3\n0 1\n0 2\n\n0 3\n").unwrap();
        assert_eq!(g, Graph::star(3).unwrap());
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert!(parse_edge_list("4 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 0\n").is_err());
        assert!(parse_edge_list("x\n").is_err());
    }
}
