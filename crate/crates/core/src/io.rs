//! Edge-list and hyperedge-list parsing, CSV/JSON/DOT export of reports.
//!
//! Input lines hold whitespace- or comma-separated vertex tokens; `#` starts a
//! comment. Tokens are either 0-based indices or arbitrary labels interned in
//! first-seen order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::centrality::{CentralityReport, EdgeSet};
use crate::error::{GraphError, IoError};
use crate::graph::{DirectedGraph, Hypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexNaming {
    /// Indices if every token is a non-negative integer, labels otherwise.
    #[default]
    Auto,
    Index,
    Label,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            let sep = ch.is_whitespace() || ch == ',';
            match (start, sep) {
                (None, false) => start = Some(pos),
                (Some(s), true) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(Line { number: i + 1, tokens });
        }
    }
    lines
}

struct Resolver {
    by_index: bool,
    ids: HashMap<String, usize>,
    labels: Vec<String>,
    max_index: Option<usize>,
}

impl Resolver {
    fn new(lines: &[Line<'_>], naming: VertexNaming) -> Self {
        let all_numeric = lines
            .iter()
            .flat_map(|l| &l.tokens)
            .all(|t| t.text.parse::<usize>().is_ok());
        let by_index = match naming {
            VertexNaming::Auto => all_numeric,
            VertexNaming::Index => true,
            VertexNaming::Label => false,
        };
        Self {
            by_index,
            ids: HashMap::new(),
            labels: Vec::new(),
            max_index: None,
        }
    }

    fn resolve(&mut self, line: usize, token: &Token<'_>) -> Result<usize, IoError> {
        if self.by_index {
            let v = token.text.parse::<usize>().map_err(|_| IoError::Parse {
                line,
                column: token.column,
                message: format!("expected a vertex index, found `{}`", token.text),
            })?;
            self.max_index = Some(self.max_index.map_or(v, |m| m.max(v)));
            Ok(v)
        } else {
            let next = self.labels.len();
            let id = *self.ids.entry(token.text.to_string()).or_insert(next);
            if id == next {
                self.labels.push(token.text.to_string());
            }
            Ok(id)
        }
    }

    fn vertex_count(&self, declared: Option<usize>) -> usize {
        let seen = if self.by_index {
            self.max_index.map_or(0, |m| m + 1)
        } else {
            self.labels.len()
        };
        declared.map_or(seen, |d| d.max(seen))
    }
}

/// Parses `tail head` lines into a directed graph.
///
/// In index mode the vertex count is one more than the largest index seen;
/// `min_vertices` pads it to include trailing isolated vertices.
pub fn parse_edgelist(
    text: &str,
    naming: VertexNaming,
    min_vertices: Option<usize>,
) -> Result<DirectedGraph, IoError> {
    let lines = tokenize(text);
    let mut resolver = Resolver::new(&lines, naming);
    let mut edges = Vec::with_capacity(lines.len());
    for line in &lines {
        if line.tokens.len() != 2 {
            let column = line.tokens.get(2).map_or(line.tokens[0].column, |t| t.column);
            return Err(IoError::Parse {
                line: line.number,
                column,
                message: format!("expected 2 vertices per edge, found {}", line.tokens.len()),
            });
        }
        let t = resolver.resolve(line.number, &line.tokens[0])?;
        let h = resolver.resolve(line.number, &line.tokens[1])?;
        if t == h {
            return Err(IoError::Graph {
                line: line.number,
                source: GraphError::SelfLoop {
                    edge: edges.len(),
                    vertex: t,
                },
            });
        }
        edges.push((t, h));
    }
    let n = resolver.vertex_count(min_vertices);
    let g = DirectedGraph::new(n, edges).map_err(|e| IoError::Graph { line: 0, source: e })?;
    if resolver.by_index {
        Ok(g)
    } else {
        g.with_labels(resolver.labels)
            .map_err(|e| IoError::Graph { line: 0, source: e })
    }
}

/// Parses one hyperedge per line.
pub fn parse_hyperedgelist(
    text: &str,
    naming: VertexNaming,
    min_vertices: Option<usize>,
) -> Result<Hypergraph, IoError> {
    let lines = tokenize(text);
    let mut resolver = Resolver::new(&lines, naming);
    let mut hyperedges = Vec::with_capacity(lines.len());
    for line in &lines {
        let members = line
            .tokens
            .iter()
            .map(|t| resolver.resolve(line.number, t))
            .collect::<Result<Vec<_>, _>>()?;
        hyperedges.push(members);
    }
    let n = resolver.vertex_count(min_vertices);
    let h = Hypergraph::new(n, hyperedges).map_err(|e| IoError::Graph { line: 0, source: e })?;
    if resolver.by_index {
        Ok(h)
    } else {
        h.with_labels(resolver.labels)
            .map_err(|e| IoError::Graph { line: 0, source: e })
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_edgelist(path: &Path, naming: VertexNaming) -> Result<DirectedGraph, IoError> {
    parse_edgelist(&read(path)?, naming, None)
}

pub fn read_hyperedgelist(path: &Path, naming: VertexNaming) -> Result<Hypergraph, IoError> {
    parse_hyperedgelist(&read(path)?, naming, None)
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `id,label,c_v,s_v[,s_hub,s_auth]`, one row per vertex.
pub fn vertex_csv(report: &CentralityReport) -> String {
    let roles = report.s_hub.is_some() && report.s_auth.is_some();
    let mut out = String::from("id,label,c_v,s_v");
    if roles {
        out.push_str(",s_hub,s_auth");
    }
    out.push('\n');
    for i in 0..report.vertex_labels.len() {
        let _ = write!(
            out,
            "{i},{},{},{}",
            csv_field(&report.vertex_labels[i]),
            float(report.c_v.get(i).copied().unwrap_or(f64::NAN)),
            float(report.s_v.get(i).copied().unwrap_or(f64::NAN)),
        );
        if let (Some(hub), Some(auth)) = (&report.s_hub, &report.s_auth) {
            let _ = write!(out, ",{},{}", float(hub[i]), float(auth[i]));
        }
        out.push('\n');
    }
    out
}

/// `id,tail,head,c_e,s_e` for graphs, `id,members,c_e,s_e` for hypergraphs
/// (members separated by `;`).
pub fn edge_csv(report: &CentralityReport) -> String {
    let mut out = String::new();
    match &report.edges {
        EdgeSet::Oriented { edges } => {
            out.push_str("id,tail,head,c_e,s_e\n");
            for (k, &(t, h)) in edges.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{k},{},{},{},{}",
                    csv_field(&report.vertex_labels[t]),
                    csv_field(&report.vertex_labels[h]),
                    float(report.c_e[k]),
                    float(report.s_e[k]),
                );
            }
        }
        EdgeSet::Hyper { hyperedges } => {
            out.push_str("id,members,c_e,s_e\n");
            for (k, members) in hyperedges.iter().enumerate() {
                let names: Vec<&str> = members.iter().map(|&v| report.vertex_labels[v].as_str()).collect();
                let _ = writeln!(
                    out,
                    "{k},{},{},{}",
                    csv_field(&names.join(";")),
                    float(report.c_e[k]),
                    float(report.s_e[k]),
                );
            }
        }
    }
    out
}

pub fn report_to_json(report: &CentralityReport) -> Result<String, IoError> {
    Ok(serde_json::to_string_pretty(report)?)
}

pub fn report_from_json(text: &str) -> Result<CentralityReport, IoError> {
    Ok(serde_json::from_str(text)?)
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Greyscale fill: score 1 is black, score 0 white.
fn shade(score: f64) -> String {
    let level = (255.0 * (1.0 - score.clamp(0.0, 1.0))).round() as u8;
    format!("#{level:02x}{level:02x}{level:02x}")
}

/// Graphviz rendering shaded by `s_v`, edge widths by `s_e`. Hyperedges are
/// drawn as box nodes joined to their members.
pub fn report_to_dot(report: &CentralityReport) -> String {
    let directed = matches!(report.edges, EdgeSet::Oriented { .. });
    let mut out = String::from(if directed { "digraph centrality {\n" } else { "graph centrality {\n" });
    out.push_str("  node [style=filled];\n");
    for (i, label) in report.vertex_labels.iter().enumerate() {
        let s = report.s_v.get(i).copied().unwrap_or(0.0);
        let _ = writeln!(
            out,
            "  v{i} [label={}, fillcolor=\"{}\", tooltip=\"s_v={:.6}\"];",
            dot_id(label),
            shade(s),
            s
        );
    }
    match &report.edges {
        EdgeSet::Oriented { edges } => {
            for (k, &(t, h)) in edges.iter().enumerate() {
                let s = report.s_e[k];
                let _ = writeln!(out, "  v{t} -> v{h} [penwidth={:.3}, tooltip=\"s_e={:.6}\"];", 1.0 + 4.0 * s, s);
            }
        }
        EdgeSet::Hyper { hyperedges } => {
            for (k, members) in hyperedges.iter().enumerate() {
                let s = report.s_e[k];
                let _ = writeln!(
                    out,
                    "  e{k} [shape=box, label=\"e{k}\", fillcolor=\"{}\", tooltip=\"s_e={:.6}\"];",
                    shade(s),
                    s
                );
                for &v in members {
                    let _ = writeln!(out, "  e{k} -- v{v};");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Writes `contents` to `path`, or stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), IoError> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|source| IoError::File {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
