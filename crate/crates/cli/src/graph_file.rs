//! Graph files, built-in graph names and weight strings like `2i+j`.

use std::path::Path;

use qhecke_core::{Graph, GraphError, Weight};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Parses
///
/// ```text
/// vertices: i j k
/// edges: i-j j-k
/// ```
///
/// Edges keep the orientation they are written in. Blank lines and lines
/// starting with `#` are ignored; the `edges:` line may be omitted.
pub fn parse_graph(text: &str) -> Result<Graph, GraphFileError> {
    let mut vertices: Option<(usize, Vec<String>)> = None;
    let mut edges: Option<(usize, Vec<(String, String)>)> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let syntax = |message: String| GraphFileError::Syntax { line, message };
        let (key, rest) = body
            .split_once(':')
            .ok_or_else(|| syntax(format!("expected `vertices:` or `edges:`, found `{body}`")))?;
        match key.trim() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(syntax("duplicate `vertices:` line".into()));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
                if names.is_empty() {
                    return Err(syntax("no vertices given".into()));
                }
                if let Some(bad) = names.iter().find(|v| !is_name(v)) {
                    return Err(syntax(format!("vertex name `{bad}` is not alphanumeric")));
                }
                vertices = Some((line, names));
            }
            "edges" => {
                if vertices.is_none() {
                    return Err(syntax("`edges:` must come after `vertices:`".into()));
                }
                if edges.is_some() {
                    return Err(syntax("duplicate `edges:` line".into()));
                }
                let mut list = Vec::new();
                for tok in rest.split_whitespace() {
                    let (a, b) = tok
                        .split_once('-')
                        .filter(|(a, b)| is_name(a) && is_name(b))
                        .ok_or_else(|| syntax(format!("malformed edge `{tok}`, expected `a-b`")))?;
                    list.push((a.to_owned(), b.to_owned()));
                }
                edges = Some((line, list));
            }
            other => return Err(syntax(format!("unknown key `{other}`"))),
        }
    }
    let (vline, names) = vertices.ok_or(GraphFileError::Syntax { line: 1, message: "missing `vertices:` line".into() })?;
    let (eline, edges) = edges.unwrap_or((vline, Vec::new()));
    // Build vertex-only first so vertex errors point at the right line.
    Graph::new::<String>(&names, &[]).map_err(|source| GraphFileError::Graph { line: vline, source })?;
    Graph::new(&names, &edges).map_err(|source| GraphFileError::Graph { line: eline, source })
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `A1`, `A2`, `A3`, `edgeless2` or a path to a graph file.
pub fn load_graph(name: &str) -> Result<Graph, GraphFileError> {
    match name {
        "A1" => return Ok(Graph::single()),
        "A2" => return Ok(Graph::a2()),
        "A3" => return Ok(Graph::a3()),
        "edgeless2" => return Ok(Graph::edgeless2()),
        _ => {}
    }
    let path = Path::new(name);
    let text = std::fs::read_to_string(path).map_err(|source| GraphFileError::Io { path: name.to_owned(), source })?;
    parse_graph(&text)
}

/// A warning for graphs where the algebra would need modified relations.
pub fn odd_cycle_warning(graph: &Graph) -> Option<&'static str> {
    graph.has_odd_cycle().then_some(
        "graph has an odd cycle: the algebra is defined with the unmodified relations, \
         so the match between projectives and the canonical basis is not guaranteed",
    )
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad weight `{text}`: {message}")]
pub struct WeightError {
    pub text: String,
    pub message: String,
}

/// Parses `2i+j`, `i + 2*j`, `0` into a weight on the vertices of `graph`.
pub fn parse_weight(graph: &Graph, text: &str) -> Result<Weight, WeightError> {
    let err = |message: String| WeightError { text: text.to_owned(), message };
    let mut nu = Weight::zero(graph.num_vertices());
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(nu);
    }
    for part in compact.split('+') {
        if part.is_empty() {
            return Err(err("empty summand".into()));
        }
        let split = part.find(|c: char| !c.is_ascii_digit()).unwrap_or(part.len());
        let (digits, name) = part.split_at(split);
        let name = name.strip_prefix('*').unwrap_or(name);
        let mult: u32 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| err(format!("bad multiplicity `{digits}`")))? };
        if name.is_empty() {
            return Err(err(format!("summand `{part}` has no vertex")));
        }
        let v = graph.vertex(name).ok_or_else(|| err(format!("unknown vertex `{name}`")))?;
        nu.0[v] += mult;
    }
    Ok(nu)
}

/// Formats a weight as `2i+j`; the zero weight prints as `0`.
pub fn format_weight(graph: &Graph, nu: &Weight) -> String {
    let parts: Vec<String> = nu
        .0
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, &c)| if c == 1 { graph.name(v).to_owned() } else { format!("{c}{}", graph.name(v)) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}
