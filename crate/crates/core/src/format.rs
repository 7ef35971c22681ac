//! Plain-text instance formats.
//!
//! * `.rcg`: header `rcg <n_vertices> <n_edges> <n_colours>`, then one
//!   `<u> <v> <colour>` line per edge.
//! * `.dg`: header `dg <n> <m>`, then one `<tail> <head>` line per arc.
//! * `.bcm`: header `bcm <rows> <cols> <n_colours>`, then one
//!   `<bitstring> <colour>` line per column. The first character of the
//!   bitstring is row 0.
//!
//! `#` starts a comment anywhere on a line; blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ColouredGraph, Digraph, Edge, GraphError};
use crate::matroid::{BinaryColouredMatroid, MatroidError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("empty input")]
    Empty,
    #[error("unknown header `{0}`, expected rcg, dg or bcm")]
    UnknownHeader(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// A coloured graph read from text. When the file used colour labels that
/// were not already `0..n_colours`, `colour_labels[i]` is the label that
/// became colour `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: ColouredGraph,
    pub colour_labels: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(LoadedGraph),
    Digraph(Digraph),
    Matroid(BinaryColouredMatroid),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next non-empty line with comments stripped, as (1-based number, fields).
    fn next_fields(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = body.split_whitespace().collect();
            if !fields.is_empty() {
                return Some((i + 1, fields));
            }
        }
        None
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, FormatError> {
    field.parse().map_err(|_| syntax(line, format!("{what} `{field}` is not a non-negative integer")))
}

fn header<'a>(lines: &mut Lines<'a>, word: &str, arity: usize) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (line, fields) = lines.next_fields().ok_or(FormatError::Empty)?;
    if fields[0] != word {
        return Err(syntax(line, format!("expected header `{word}`, found `{}`", fields[0])));
    }
    if fields.len() != arity + 1 {
        return Err(syntax(line, format!("header `{word}` takes {arity} numbers")));
    }
    Ok((line, fields[1..].to_vec()))
}

fn no_trailing(lines: &mut Lines<'_>, expected: usize) -> Result<(), FormatError> {
    match lines.next_fields() {
        Some((line, _)) => Err(syntax(line, format!("more than the {expected} declared records"))),
        None => Ok(()),
    }
}

/// Parses `.rcg` text. Endpoints are not range-checked here so that
/// validation can report every problem; self-loops are kept for the same
/// reason.
pub fn parse_rcg(text: &str) -> Result<LoadedGraph, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, h) = header(&mut lines, "rcg", 3)?;
    let n: usize = number(hline, h[0], "vertex count")?;
    let m: usize = number(hline, h[1], "edge count")?;
    let k: usize = number(hline, h[2], "colour count")?;
    let mut raw = Vec::with_capacity(m);
    for i in 0..m {
        let (line, f) = lines
            .next_fields()
            .ok_or_else(|| syntax(hline, format!("declared {m} edges, found {i}")))?;
        if f.len() != 3 {
            return Err(syntax(line, "edge lines are `<u> <v> <colour>`"));
        }
        let u = number(line, f[0], "endpoint")?;
        let v = number(line, f[1], "endpoint")?;
        let c: u64 = number(line, f[2], "colour")?;
        raw.push((u, v, c));
    }
    no_trailing(&mut lines, m)?;

    let dense = raw.iter().all(|&(_, _, c)| c < k as u64);
    if dense {
        let edges = raw.into_iter().map(|(u, v, c)| Edge::new(u, v, c as usize)).collect();
        return Ok(LoadedGraph { graph: ColouredGraph::new(n, k, edges), colour_labels: None });
    }
    let mut labels: Vec<u64> = raw.iter().map(|&(_, _, c)| c).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > k {
        return Err(syntax(hline, format!("declared {k} colours, found {} distinct labels", labels.len())));
    }
    let edges = raw
        .into_iter()
        .map(|(u, v, c)| Edge::new(u, v, labels.binary_search(&c).unwrap()))
        .collect();
    Ok(LoadedGraph { graph: ColouredGraph::new(n, k, edges), colour_labels: Some(labels) })
}

pub fn write_rcg(g: &ColouredGraph) -> String {
    let mut out = format!("rcg {} {} {}\n", g.n_vertices(), g.n_edges(), g.n_colours());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.colour).unwrap();
    }
    out
}

pub fn parse_dg(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, h) = header(&mut lines, "dg", 2)?;
    let n: usize = number(hline, h[0], "vertex count")?;
    let m: usize = number(hline, h[1], "arc count")?;
    let mut arcs = Vec::with_capacity(m);
    for i in 0..m {
        let (line, f) = lines
            .next_fields()
            .ok_or_else(|| syntax(hline, format!("declared {m} arcs, found {i}")))?;
        if f.len() != 2 {
            return Err(syntax(line, "arc lines are `<tail> <head>`"));
        }
        arcs.push((number(line, f[0], "tail")?, number(line, f[1], "head")?));
    }
    no_trailing(&mut lines, m)?;
    Ok(Digraph::new(n, arcs)?)
}

pub fn write_dg(d: &Digraph) -> String {
    let mut out = format!("dg {} {}\n", d.n_vertices(), d.n_arcs());
    for &(a, b) in d.arcs() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn parse_bcm(text: &str) -> Result<BinaryColouredMatroid, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, h) = header(&mut lines, "bcm", 3)?;
    let rows: usize = number(hline, h[0], "row count")?;
    let cols: usize = number(hline, h[1], "column count")?;
    let k: usize = number(hline, h[2], "colour count")?;
    if rows > crate::matroid::MAX_ROWS {
        return Err(syntax(hline, format!("at most {} rows are supported", crate::matroid::MAX_ROWS)));
    }
    let mut columns = Vec::with_capacity(cols);
    let mut colours = Vec::with_capacity(cols);
    for j in 0..cols {
        let (line, f) = lines
            .next_fields()
            .ok_or_else(|| syntax(hline, format!("declared {cols} columns, found {j}")))?;
        if f.len() != 2 {
            return Err(syntax(line, "column lines are `<bitstring> <colour>`"));
        }
        if f[0].len() != rows {
            return Err(syntax(line, format!("bitstring has {} entries, expected {rows}", f[0].len())));
        }
        let mut v = 0u128;
        for (r, ch) in f[0].chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v |= 1 << r,
                _ => return Err(syntax(line, format!("`{ch}` is not a bit"))),
            }
        }
        columns.push(v);
        colours.push(number(line, f[1], "colour")?);
    }
    no_trailing(&mut lines, cols)?;
    Ok(BinaryColouredMatroid::new(rows, columns, colours, k)?)
}

pub fn write_bcm(m: &BinaryColouredMatroid) -> String {
    let mut out = format!("bcm {} {} {}\n", m.n_rows(), m.n_columns(), m.n_colours());
    for (&col, &c) in m.columns().iter().zip(m.colours()) {
        let bits: String = (0..m.n_rows()).map(|r| if col >> r & 1 == 1 { '1' } else { '0' }).collect();
        writeln!(out, "{bits} {c}").unwrap();
    }
    out
}

/// Undirected DOT dump; edges are labelled with their colour.
pub fn write_dot(g: &ColouredGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n_vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.colour).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn write_dot_directed(d: &Digraph) -> String {
    let mut out = String::from("digraph D {\n");
    for v in 0..d.n_vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for &(a, b) in d.arcs() {
        writeln!(out, "  {a} -> {b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Dispatches on the header word.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let word = Lines::new(text).next_fields().ok_or(FormatError::Empty)?.1[0];
    match word {
        "rcg" => parse_rcg(text).map(Instance::Graph),
        "dg" => parse_dg(text).map(Instance::Digraph),
        "bcm" => parse_bcm(text).map(Instance::Matroid),
        other => Err(FormatError::UnknownHeader(other.to_string())),
    }
}

pub fn write_instance(instance: &Instance) -> String {
    match instance {
        Instance::Graph(g) => write_rcg(&g.graph),
        Instance::Digraph(d) => write_dg(d),
        Instance::Matroid(m) => write_bcm(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{binary_counterexample, circulant_instance};
    use crate::graph::Violation;

    #[test]
    fn rcg_round_trip() {
        let g = circulant_instance(7).unwrap();
        let text = write_rcg(&g);
        assert!(text.starts_with("rcg 7 14 7\n0 1 0\n0 2 0\n1 2 1\n"));
        let back = parse_rcg(&text).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(back.colour_labels, None);
        assert_eq!(write_rcg(&back.graph), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a triangle\nrcg 3 3 3   # header\n\n0 1 0\n1 2 1 # mid\n2 0 2\n";
        let g = parse_rcg(text).unwrap().graph;
        assert_eq!(g.n_edges(), 3);
        assert_eq!(g.edge(1), Edge::new(1, 2, 1));
    }

    #[test]
    fn sparse_labels_are_reindexed() {
        let text = "rcg 3 3 2\n0 1 40\n1 2 7\n2 0 40\n";
        let loaded = parse_rcg(text).unwrap();
        assert_eq!(loaded.colour_labels, Some(vec![7, 40]));
        let colours: Vec<usize> = loaded.graph.edges().iter().map(|e| e.colour).collect();
        assert_eq!(colours, vec![1, 0, 1]);
        assert!(parse_rcg("rcg 3 3 1\n0 1 40\n1 2 7\n2 0 40\n").is_err());
    }

    #[test]
    fn rcg_errors_carry_line_numbers() {
        assert_eq!(
            parse_rcg("rcg 3 2 1\n0 1 0\n1 x 0\n"),
            Err(FormatError::Syntax { line: 3, message: "endpoint `x` is not a non-negative integer".into() })
        );
        assert!(matches!(parse_rcg("rcg 3 2 1\n0 1 0\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_rcg("rcg 3 1 1\n0 1 0\n1 2 0\n"), Err(FormatError::Syntax { line: 3, .. })));
        assert!(matches!(parse_rcg("dg 3 1\n0 1\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert_eq!(parse_rcg("# nothing\n"), Err(FormatError::Empty));
    }

    #[test]
    fn self_loops_survive_parsing_for_validation() {
        let g = parse_rcg("rcg 2 1 1\n1 1 0\n").unwrap().graph;
        let report = g.validate(&Default::default());
        assert_eq!(report.violations, vec![Violation::SelfLoop { edge: 0, vertex: 1 }]);
    }

    #[test]
    fn dg_round_trip_and_rejection() {
        let text = "dg 3 3\n0 1\n1 2\n2 0\n";
        let d = parse_dg(text).unwrap();
        assert_eq!(write_dg(&d), text);
        assert!(matches!(parse_dg("dg 2 1\n1 1\n"), Err(FormatError::Graph(_))));
    }

    #[test]
    fn bcm_round_trip() {
        let m = binary_counterexample(6).unwrap();
        let text = write_bcm(&m);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("bcm 5 12 6"));
        assert_eq!(lines.next(), Some("10000 0"));
        assert_eq!(lines.nth(4), Some("11111 5"));
        assert_eq!(parse_bcm(&text).unwrap(), m);
        assert!(matches!(parse_bcm("bcm 2 1 1\n101 0\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_bcm("bcm 2 1 1\n1a 0\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_bcm("bcm 2 1 1\n10 3\n"), Err(FormatError::Matroid(_))));
    }

    #[test]
    fn dispatch_on_header() {
        assert!(matches!(parse_instance("rcg 1 0 0\n"), Ok(Instance::Graph(_))));
        assert!(matches!(parse_instance("dg 1 0\n"), Ok(Instance::Digraph(_))));
        assert!(matches!(parse_instance("bcm 1 0 0\n"), Ok(Instance::Matroid(_))));
        assert_eq!(parse_instance("xyz 1\n"), Err(FormatError::UnknownHeader("xyz".into())));
    }

    #[test]
    fn dot_output() {
        let g = ColouredGraph::from_triples(2, &[(0, 1, 3)]);
        assert_eq!(write_dot(&g), "graph G {\n  0;\n  1;\n  0 -- 1 [label=\"3\"];\n}\n");
    }
}
