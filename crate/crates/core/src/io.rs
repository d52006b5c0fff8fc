//! Edge-list text format and DOT export.
//!
//! The edge-list format is a header line `n m` followed by exactly `m` lines
//! `u v` of whitespace-separated, 0-indexed vertex ids. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::Graph;

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = it
            .next()
            .ok_or_else(|| ParseError::new(line_no, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| ParseError::new(line_no, format!("{what} '{tok}' is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(ParseError::new(line_no, format!("unexpected trailing token '{extra}'")));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line 'n m'"))?;
    let (n, m) = parse_pair(header_no, header)?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        if edges.len() == m {
            return Err(ParseError::new(
                line_no,
                format!("more edge lines than the declared count {m}"),
            ));
        }
        let (u, v) = parse_pair(line_no, line)?;
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::new(
                    line_no,
                    format!("vertex {w} out of range for {n} vertices"),
                ));
            }
        }
        if u == v {
            return Err(ParseError::new(line_no, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(
                line_no,
                format!("duplicate edge {u} {v} (declared count {m} counts distinct edges)"),
            ));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::new(
            last_line,
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges).map_err(|e| ParseError::new(last_line, e.to_string()))
}

/// Canonical text form: edges with `u < v` in lexicographic order.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.m() * 8);
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Graphviz export. When `labels` is given, vertex `v` carries
/// `class="labels[v]"`.
pub fn emit_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph G {\n");
    if let Some(labels) = labels {
        for (v, label) in labels.iter().enumerate().take(g.n()) {
            writeln!(out, "  {v} [class=\"{}\"];", label.replace('"', "\\\"")).unwrap();
        }
    } else {
        for v in g.vertices().filter(|&v| g.degree(v) == 0) {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
