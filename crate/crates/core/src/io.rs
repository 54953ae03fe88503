//! Plain-text graph formats.
//!
//! Edge lists look like
//!
//! ```text
//! # optional comments
//! p 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! with 0-based vertex ids. graph6 is accepted on input only.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, message: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Parse { line, message: format!("bad {what} '{tok}'") })
}

/// Parses the edge-list format. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        if header.is_none() {
            if toks.next() != Some("p") {
                return Err(Error::Parse { line, message: "expected header 'p <n> <m>'".into() });
            }
            let n = parse_num(toks.next(), line, "vertex count")?;
            let m = parse_num(toks.next(), line, "edge count")?;
            header = Some((n, m, line));
        } else {
            let u = parse_num(toks.next(), line, "endpoint")?;
            let v = parse_num(toks.next(), line, "endpoint")?;
            edges.push((u, v, line));
        }
        if toks.next().is_some() {
            return Err(Error::Parse { line, message: "trailing tokens".into() });
        }
    }
    let (n, m, hline) = header.ok_or(Error::Parse { line: 0, message: "empty input".into() })?;
    if edges.len() != m {
        return Err(Error::Parse { line: hline, message: format!("header declares {m} edges, found {}", edges.len()) });
    }
    for &(u, v, line) in &edges {
        if u >= n || v >= n {
            return Err(Error::Parse { line, message: format!("vertex out of range 0..{n}") });
        }
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    Graph::from_edges(n, &pairs)
}

/// Writes the edge-list format, edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses a single graph6 string, with or without the `>>graph6<<` prefix.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    let err = |message: &str| Error::Parse { line: 1, message: message.into() };
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(err("graph6 byte outside 63..=126"));
    }
    let (n, rest) = match bytes.as_slice() {
        [] => return Err(err("empty graph6 string")),
        [126, 126, tail @ ..] => {
            if tail.len() < 6 {
                return Err(err("truncated graph6 size"));
            }
            let n = tail[..6].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &tail[6..])
        }
        [126, tail @ ..] => {
            if tail.len() < 3 {
                return Err(err("truncated graph6 size"));
            }
            let n = tail[..3].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &tail[3..])
        }
        [b, tail @ ..] => ((b - 63) as usize, tail),
    };
    let bit_count = n * n.saturating_sub(1) / 2;
    if rest.len() != bit_count.div_ceil(6) {
        return Err(err("graph6 length does not match vertex count"));
    }
    let bit = |i: usize| (rest[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn edge_list_round_trip() {
        let g = gen::spider(3, 2).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        let with_comments = format!("# spider\n\n{}# end\n", text.replace('\n', "  # x\n"));
        assert_eq!(parse_edge_list(&with_comments).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        assert!(matches!(parse_edge_list("p 3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("p 3 2\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("p 3 1\n\n0 3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert_eq!(parse_edge_list("p 2 1\n1 1\n"), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(parse_graph6("C~").unwrap(), gen::complete(4).unwrap());
        let g = parse_graph6("DQc").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), gen::complete(4).unwrap());
        assert_eq!(parse_graph6("@").unwrap().order(), 1);
        assert_eq!(parse_graph6("?"), Err(Error::EmptyGraph));
    }

    /// Independent encoder used as the oracle for the decoder.
    fn encode(g: &Graph) -> String {
        let n = g.order();
        let mut bytes = if n <= 62 {
            vec![n as u8 + 63]
        } else {
            let mut v = vec![126];
            v.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
            v
        };
        let mut bits = Vec::new();
        for v in 1..n {
            for u in 0..v {
                bits.push(g.has_edge(u, v));
            }
        }
        for chunk in bits.chunks(6) {
            let mut b = 0u8;
            for k in 0..6 {
                b = b << 1 | chunk.get(k).copied().unwrap_or(false) as u8;
            }
            bytes.push(b + 63);
        }
        String::from_utf8(bytes).unwrap()
    }

    #[test]
    fn graph6_matches_encoder() {
        for (n, seed) in [(5, 1), (17, 2), (62, 3), (63, 4), (100, 5)] {
            let g = gen::random_connected(n, 0.2, seed).unwrap();
            assert_eq!(parse_graph6(&encode(&g)).unwrap(), g, "n={n}");
        }
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C\u{7f}").is_err());
    }
}
