//! Graph file parsing and serialization.
//!
//! The on-disk format is DIMACS-like: optional comment lines `c <text>`,
//! exactly one header `p edge <n> <m>`, and `m` edge records `e <u> <v>`
//! with 1-based vertex ids. Parsing is whitespace-tolerant and
//! order-insensitive; writing is canonical (header first, edges in
//! lexicographic order), so `parse(write(g)) == g` for any graph labeled
//! `1..=n`.

use std::fmt::Write as _;

use sqroot::graph::{Edge, Graph, Vertex};
use thiserror::Error;

/// Errors from [`parse_graph`], each tagged with the offending line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// No `p edge <n> <m>` line anywhere in the input.
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    /// A `p` line that is not of the form `p edge <n> <m>`.
    #[error("line {line}: malformed header `{found}` (expected `p edge <n> <m>`)")]
    MalformedHeader { line: usize, found: String },
    /// More than one `p` line.
    #[error("line {line}: duplicate `p` header")]
    DuplicateHeader { line: usize },
    /// An `e` line before the `p` header.
    #[error("line {line}: edge record before the `p` header")]
    EdgeBeforeHeader { line: usize },
    /// An `e` line that is not of the form `e <u> <v>`.
    #[error("line {line}: malformed edge record `{found}` (expected `e <u> <v>`)")]
    MalformedEdge { line: usize, found: String },
    /// A vertex id outside `1..=n`.
    #[error("line {line}: vertex id {id} outside 1..={n}")]
    VertexOutOfRange { line: usize, id: u64, n: usize },
    /// An edge from a vertex to itself.
    #[error("line {line}: self-loop at vertex {id}")]
    SelfLoop { line: usize, id: Vertex },
    /// The same vertex pair listed twice.
    #[error("line {line}: duplicate edge {edge}")]
    DuplicateEdge { line: usize, edge: Edge },
    /// A record type other than `c`, `p`, or `e`.
    #[error("line {line}: unknown record type `{kind}`")]
    UnknownRecord { line: usize, kind: String },
    /// Fewer or more edge records than the header declared.
    #[error("header declared {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Parses a graph file. Vertex ids `1..=n` become graph labels directly.
///
/// # Errors
///
/// Any structural defect is reported with its line number; see
/// [`ParseError`].
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::empty();
    let mut found_edges = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else {
            continue;
        };
        match kind {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let fields: Vec<&str> = tokens.collect();
                let malformed = || ParseError::MalformedHeader {
                    line,
                    found: raw.trim().to_string(),
                };
                let [format, n, m] = fields.as_slice() else {
                    return Err(malformed());
                };
                if *format != "edge" {
                    return Err(malformed());
                }
                let n: u32 = n.parse().map_err(|_| malformed())?;
                let m: usize = m.parse().map_err(|_| malformed())?;
                header = Some((n as usize, m));
                graph = Graph::from_vertices(1..=n);
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(ParseError::EdgeBeforeHeader { line });
                };
                let fields: Vec<&str> = tokens.collect();
                let malformed = || ParseError::MalformedEdge {
                    line,
                    found: raw.trim().to_string(),
                };
                let [u, v] = fields.as_slice() else {
                    return Err(malformed());
                };
                let u: u64 = u.parse().map_err(|_| malformed())?;
                let v: u64 = v.parse().map_err(|_| malformed())?;
                for id in [u, v] {
                    if id < 1 || id > n as u64 {
                        return Err(ParseError::VertexOutOfRange { line, id, n });
                    }
                }
                let (u, v) = (u as Vertex, v as Vertex);
                if u == v {
                    return Err(ParseError::SelfLoop { line, id: u });
                }
                let edge = Edge::new(u, v);
                if !graph.add_edge(edge) {
                    return Err(ParseError::DuplicateEdge { line, edge });
                }
                found_edges += 1;
            }
            other => {
                return Err(ParseError::UnknownRecord {
                    line,
                    kind: other.to_string(),
                });
            }
        }
    }

    let Some((_, declared)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if declared != found_edges {
        return Err(ParseError::EdgeCountMismatch {
            declared,
            found: found_edges,
        });
    }
    Ok(graph)
}

/// Serializes a graph canonically: `p edge <n> <m>` followed by the edges
/// in lexicographic order, one per line.
///
/// Graphs labeled exactly `1..=n` round-trip bit-exactly. A graph with any
/// other label set (for example a kernel, whose labels are a subset of the
/// input's) is relabeled `1..=n` in ascending label order, and a comment
/// line per vertex records the original id.
pub fn write_graph(g: &Graph) -> String {
    let labels: Vec<Vertex> = g.vertices().collect();
    let contiguous = labels.iter().copied().eq(1..=g.n() as Vertex);

    let mut text = String::new();
    if contiguous {
        let _ = writeln!(text, "p edge {} {}", g.n(), g.m());
        for e in g.edges() {
            let _ = writeln!(text, "e {} {}", e.u(), e.v());
        }
        return text;
    }

    let new_id = |v: Vertex| -> usize { labels.binary_search(&v).expect("own label") + 1 };
    for (i, &old) in labels.iter().enumerate() {
        let _ = writeln!(text, "c vertex {} was {}", i + 1, old);
    }
    let _ = writeln!(text, "p edge {} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(text, "e {} {}", new_id(e.u()), new_id(e.v()));
    }
    text
}

/// Serializes a graph in DOT format, keeping its own vertex labels: one
/// `u -- v` line per edge in lexicographic order, plus a bare line per
/// isolated vertex so the rendering shows the full vertex set.
pub fn write_dot(g: &Graph) -> String {
    let mut text = String::from("graph {\n");
    for v in g.vertices() {
        if g.degree(v) == 0 {
            let _ = writeln!(text, "    {v};");
        }
    }
    for e in g.edges() {
        let _ = writeln!(text, "    {} -- {};", e.u(), e.v());
    }
    text.push_str("}\n");
    text
}
