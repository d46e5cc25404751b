//! Readers and writers for graphs, Pareto sets and contraction orders.
//!
//! All readers rebase node ids to dense 0-based integers. The supported
//! formats use dense integer ids already, so the mapping back to external
//! ids is a fixed offset (`+1` for METIS and DIMACS, identity for edge lists).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::bisection::{ParetoPoint, ParetoSet};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Input graph formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Metis,
    Dimacs,
    EdgeList,
}

impl GraphFormat {
    /// Offset between internal and external node ids.
    pub fn id_offset(self) -> usize {
        match self {
            GraphFormat::Metis | GraphFormat::Dimacs => 1,
            GraphFormat::EdgeList => 0,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "metis" | "graph" => Ok(GraphFormat::Metis),
            "dimacs" | "gr" => Ok(GraphFormat::Dimacs),
            "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::Metis => "metis",
            GraphFormat::Dimacs => "dimacs",
            GraphFormat::EdgeList => "edgelist",
        })
    }
}

/// A parsed graph together with the repairs applied while reading it.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: UndirectedGraph,
    /// Arcs whose reverse was missing and had to be added.
    pub repaired_arcs: usize,
    /// Duplicate arcs and self-loops that were dropped.
    pub dropped_arcs: usize,
    /// Edge count announced by the header, if the format has one.
    pub declared_edges: Option<usize>,
}

pub fn read_graph(path: &Path, format: GraphFormat) -> Result<ParsedGraph> {
    let text = fs::read_to_string(path)?;
    parse_graph(&text, format)
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<ParsedGraph> {
    match format {
        GraphFormat::Metis => parse_metis(text),
        GraphFormat::Dimacs => parse_dimacs_gr(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_number(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| parse_error(line, format!("expected a non-negative integer, found `{token}`")))
}

/// Parses the unweighted METIS format. Vertex sizes, vertex weights and edge
/// weights announced by the `fmt` header field are skipped.
pub fn parse_metis(text: &str) -> Result<ParsedGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim_start().starts_with('%'))
        .ok_or_else(|| parse_error(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 4 {
        return Err(parse_error(header_line, "header must hold node and edge counts"));
    }
    let n = parse_number(fields[0], header_line)?;
    let m = parse_number(fields[1], header_line)?;
    let fmt_code = fields.get(2).copied().unwrap_or("0");
    if fmt_code.len() > 3 || !fmt_code.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(parse_error(header_line, format!("invalid fmt field `{fmt_code}`")));
    }
    let fmt_bits = format!("{fmt_code:0>3}");
    let has_size = &fmt_bits[0..1] == "1";
    let has_vertex_weight = &fmt_bits[1..2] == "1";
    let has_edge_weight = &fmt_bits[2..3] == "1";
    let ncon = match fields.get(3) {
        Some(t) => parse_number(t, header_line)?,
        None => usize::from(has_vertex_weight),
    };
    let skip_front = usize::from(has_size) + if has_vertex_weight { ncon } else { 0 };
    let stride = 1 + usize::from(has_edge_weight);

    let mut arcs = Vec::with_capacity(2 * m);
    let mut node = 0;
    for (line_no, line) in lines {
        if line.trim_start().starts_with('%') {
            continue;
        }
        if node == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_error(line_no, format!("more than {n} node lines")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < skip_front || !(tokens.len() - skip_front).is_multiple_of(stride) {
            return Err(parse_error(line_no, "malformed node line"));
        }
        for token in tokens[skip_front..].iter().step_by(stride) {
            let neighbor = parse_number(token, line_no)?;
            if neighbor == 0 || neighbor > n {
                return Err(parse_error(line_no, format!("neighbor {neighbor} outside [1, {n}]")));
            }
            if neighbor - 1 == node {
                return Err(parse_error(line_no, format!("self-loop on node {neighbor}")));
            }
            arcs.push((node, neighbor - 1));
        }
        node += 1;
    }
    // Missing trailing lines are isolated nodes.
    Ok(symmetrize(n, arcs, 0, Some(m)))
}

/// Parses the DIMACS shortest-path format (`p sp n m`, `a u v w`).
/// Weights are ignored, parallel and antiparallel arcs collapse.
pub fn parse_dimacs_gr(text: &str) -> Result<ParsedGraph> {
    let mut n = None;
    let mut declared = None;
    let mut arcs = Vec::new();
    let mut loops = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(parse_error(line_no, "duplicate p-line"));
                }
                let rest: Vec<&str> = tokens.collect();
                if rest.len() != 3 {
                    return Err(parse_error(line_no, "expected `p sp <nodes> <arcs>`"));
                }
                n = Some(parse_number(rest[1], line_no)?);
                declared = Some(parse_number(rest[2], line_no)?);
            }
            Some("a") => {
                let node_count = n.ok_or_else(|| parse_error(line_no, "arc before p-line"))?;
                let rest: Vec<&str> = tokens.collect();
                if rest.len() < 2 {
                    return Err(parse_error(line_no, "expected `a <tail> <head> [weight]`"));
                }
                let u = parse_number(rest[0], line_no)?;
                let v = parse_number(rest[1], line_no)?;
                for x in [u, v] {
                    if x == 0 || x > node_count {
                        return Err(parse_error(line_no, format!("arc endpoint {x} outside [1, {node_count}]")));
                    }
                }
                if u == v {
                    loops += 1;
                } else {
                    arcs.push((u - 1, v - 1));
                }
            }
            Some(other) => {
                return Err(parse_error(line_no, format!("unknown line type `{other}`")));
            }
        }
    }
    let n = n.ok_or_else(|| parse_error(1, "missing p-line"))?;
    let mut parsed = symmetrize(n, arcs, loops, None);
    // Directed input lists both directions; asymmetry is not a defect here.
    parsed.repaired_arcs = 0;
    parsed.declared_edges = declared.map(|arcs| arcs / 2);
    Ok(parsed)
}

/// Parses whitespace separated `u v` pairs of 0-based node ids. Lines starting
/// with `#` or `%` are comments. The node count is the largest id plus one.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut arcs = Vec::new();
    let mut loops = 0;
    let mut n = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() < 2 {
            return Err(parse_error(line_no, "expected `u v`"));
        }
        let u = parse_number(tokens[0], line_no)?;
        let v = parse_number(tokens[1], line_no)?;
        n = n.max(u + 1).max(v + 1);
        if u == v {
            loops += 1;
        } else {
            arcs.push((u, v));
            arcs.push((v, u));
        }
    }
    Ok(symmetrize(n, arcs, loops, None))
}

/// Adds missing reverse arcs and drops duplicates.
fn symmetrize(n: usize, mut arcs: Vec<(usize, usize)>, dropped: usize, declared: Option<usize>) -> ParsedGraph {
    arcs.sort_unstable();
    let before = arcs.len();
    arcs.dedup();
    let dropped_arcs = dropped + before - arcs.len();
    let missing: Vec<(usize, usize)> =
        arcs.iter().filter(|&&(u, v)| arcs.binary_search(&(v, u)).is_err()).map(|&(u, v)| (v, u)).collect();
    let repaired_arcs = missing.len();
    arcs.extend(missing);
    let graph = UndirectedGraph::from_arc_list(n, arcs);
    ParsedGraph { graph, repaired_arcs, dropped_arcs, declared_edges: declared }
}

pub fn write_metis(graph: &UndirectedGraph, mut out: impl Write) -> Result<()> {
    writeln!(out, "{} {}", graph.node_count(), graph.edge_count())?;
    for v in 0..graph.node_count() {
        let line: Vec<String> = graph.neighbors(v).iter().map(|w| (w + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn write_edge_list(graph: &UndirectedGraph, mut out: impl Write) -> Result<()> {
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Writes one row per Pareto member in increasing size. The size column is
/// named by the point type (`cut_size` or `separator_size`).
pub fn write_pareto_csv<P: ParetoPoint>(set: &ParetoSet<P>, mut out: impl Write) -> Result<()> {
    writeln!(out, "{},achieved_epsilon,small_side,large_side", P::SIZE_COLUMN)?;
    for p in set.iter() {
        let (small, large) = p.side_sizes();
        writeln!(out, "{},{:.6},{},{}", p.size(), p.achieved_epsilon(), small, large)?;
    }
    Ok(())
}

/// One 0-based node id per line; the line number is the elimination rank.
pub fn write_order(order: &[usize], mut out: impl Write) -> Result<()> {
    for v in order {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

/// Reads an order file. The result is not checked to be a permutation.
pub fn parse_order(text: &str) -> Result<Vec<usize>> {
    text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| parse_number(l.trim(), i + 1)).collect()
}
