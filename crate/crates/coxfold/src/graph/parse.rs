//! Line-oriented graph-spec format.
//!
//! ```text
//! # comment
//! name my-graph
//! vertices 1..5          # inclusive range
//! vertices 0, 7          # explicit list (commas optional)
//! edge 1-2               # absent label means 3
//! edge 2-3 label 4
//! edge 3-4 label inf
//! symmetry g: (1 5)(2 4) # cycle notation over vertex labels
//! group: g               # generators of the symmetry group
//! infinite-orbit 7       # vertex stands for an infinite orbit
//! catalog tD4:rot4       # import a catalog pair instead of explicit lines
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{
    CoxeterGraph, GraphError, Label, Symmetry, SymmetryError, SymmetryGroup, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// A parsed document: the graph plus named symmetries and the selected
/// generator names.
#[derive(Debug, Clone)]
pub struct ParsedInput {
    pub graph: Arc<CoxeterGraph>,
    pub symmetries: BTreeMap<String, BTreeMap<VertexId, VertexId>>,
    /// Names selected by a `group:` line; when absent, every declared
    /// symmetry generates.
    pub group_names: Option<Vec<String>>,
}

impl ParsedInput {
    /// Resolve the symmetry group (validating each named generator).
    /// Cycle notation leaves fixed points implicit, so mappings are
    /// completed against the vertex set before validation.
    pub fn group(&self, closure_cap: usize) -> Result<SymmetryGroup, SymmetryError> {
        let names: Vec<&String> = match &self.group_names {
            Some(names) => names.iter().collect(),
            None => self.symmetries.keys().collect(),
        };
        let mut gens = Vec::new();
        for name in names {
            let mapping = self.symmetries.get(name).ok_or_else(|| {
                SymmetryError::NotABijection(format!("undeclared symmetry '{name}'"))
            })?;
            let full = complete_mapping(&self.graph, mapping);
            gens.push(Symmetry::validate(&self.graph, &full)?);
        }
        if gens.is_empty() {
            return Ok(SymmetryGroup::trivial(Arc::clone(&self.graph)));
        }
        SymmetryGroup::generate(Arc::clone(&self.graph), gens, closure_cap)
    }
}

struct Builder {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId, Label)>,
    edge_lines: BTreeMap<(VertexId, VertexId), (usize, Label)>,
    name: Option<String>,
    infinite: Vec<VertexId>,
    symmetries: BTreeMap<String, BTreeMap<VertexId, VertexId>>,
    group_names: Option<Vec<String>>,
    catalog: Option<ParsedInput>,
}

/// Parse a graph-spec document.
pub fn parse_document(text: &str) -> Result<ParsedInput, ParseError> {
    let mut b = Builder {
        vertices: Vec::new(),
        edges: Vec::new(),
        edge_lines: BTreeMap::new(),
        name: None,
        infinite: Vec::new(),
        symmetries: BTreeMap::new(),
        group_names: None,
        catalog: None,
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let uncommented = raw.split('#').next().unwrap_or("");
        // semicolons separate directives within a physical line
        for content in uncommented.split(';') {
            if content.trim().is_empty() {
                continue;
            }
            let col = raw.find(content.trim_start()).map(|i| i + 1).unwrap_or(1);
            process_directive(content.trim(), line, col, &mut b)?;
        }
    }

    if let Some(mut imported) = b.catalog {
        // Explicit lines may add symmetries or reselect the group, but not
        // redefine the graph.
        if !b.vertices.is_empty() || !b.edges.is_empty() {
            return err(1, 1, "catalog import cannot be combined with vertex/edge lines");
        }
        for (k, v) in b.symmetries {
            imported.symmetries.insert(k, v);
        }
        if b.group_names.is_some() {
            imported.group_names = b.group_names;
        }
        return Ok(imported);
    }

    if b.vertices.is_empty() {
        return err(1, 1, "document declares no vertices");
    }
    let mut graph =
        CoxeterGraph::new(b.vertices, b.edges).map_err(|e: GraphError| ParseError {
            line: 1,
            col: 1,
            msg: e.to_string(),
        })?;
    if let Some(name) = b.name {
        graph = graph.with_name(name);
    }
    for v in &b.infinite {
        if !graph.contains(*v) {
            return err(1, 1, format!("infinite-orbit references unknown vertex {v}"));
        }
    }
    graph.mark_infinite(b.infinite);
    // validate symmetry vertex references now that the graph is fixed
    for (name, mapping) in &b.symmetries {
        for (a, bv) in mapping {
            if !graph.contains(*a) || !graph.contains(*bv) {
                return err(
                    1,
                    1,
                    format!("symmetry '{name}' references vertices outside the graph"),
                );
            }
        }
    }
    Ok(ParsedInput {
        graph: Arc::new(graph),
        symmetries: b.symmetries,
        group_names: b.group_names,
    })
}

fn process_directive(
    content: &str,
    line: usize,
    col: usize,
    b: &mut Builder,
) -> Result<(), ParseError> {
    let (keyword, rest) = match content.split_once(|c: char| c.is_whitespace() || c == ':') {
        Some((k, r)) => (k, r.trim()),
        None => (content, ""),
    };
    match keyword {
        "vertices" => parse_vertices(rest, line, col, &mut b.vertices)?,
        "edge" => parse_edge(rest, line, col, b)?,
        "symmetry" => parse_symmetry(rest, line, col, b)?,
        "group" => {
            if b.group_names.is_some() {
                return err(line, col, "duplicate group declaration");
            }
            let names: Vec<String> = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.to_string())
                .collect();
            for n in &names {
                if !b.symmetries.contains_key(n) && b.catalog.is_none() {
                    return err(line, col, format!("group references unknown symmetry '{n}'"));
                }
            }
            b.group_names = Some(names);
        }
        "name" => b.name = Some(rest.to_string()),
        "infinite-orbit" => {
            for tok in rest.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                b.infinite.push(parse_vertex(tok, line, col)?);
            }
        }
        "catalog" => {
            let pair = crate::catalog::catalog_graph(rest).map_err(|e| ParseError {
                line,
                col,
                msg: e.to_string(),
            })?;
            b.catalog = Some(ParsedInput {
                graph: Arc::new(pair.graph),
                symmetries: pair.symmetries,
                group_names: pair.selected,
            });
        }
        other => return err(line, col, format!("unknown directive '{other}'")),
    }
    Ok(())
}

fn parse_vertex(tok: &str, line: usize, col: usize) -> Result<VertexId, ParseError> {
    tok.parse::<i64>()
        .map(VertexId)
        .map_err(|_| ParseError {
            line,
            col,
            msg: format!("expected a vertex number, found '{tok}'"),
        })
}

fn parse_vertices(
    rest: &str,
    line: usize,
    col: usize,
    out: &mut Vec<VertexId>,
) -> Result<(), ParseError> {
    if let Some((a, b)) = rest.split_once("..") {
        let lo = parse_vertex(a.trim(), line, col)?;
        let hi = parse_vertex(b.trim(), line, col)?;
        if lo.0 > hi.0 {
            return err(line, col, format!("empty vertex range {}..{}", lo, hi));
        }
        out.extend((lo.0..=hi.0).map(VertexId));
        return Ok(());
    }
    for tok in rest.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        out.push(parse_vertex(tok, line, col)?);
    }
    Ok(())
}

fn parse_edge(rest: &str, line: usize, col: usize, b: &mut Builder) -> Result<(), ParseError> {
    let mut parts = rest.split_whitespace();
    let pair = parts
        .next()
        .ok_or_else(|| ParseError {
            line,
            col,
            msg: "edge requires '<u>-<v>'".into(),
        })?;
    // negative vertex labels make '-' ambiguous; take the first split
    // where both sides parse
    let (u, v) = pair
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '-')
        .find_map(|(cut, _)| {
            let u = pair[..cut].parse::<i64>().ok()?;
            let v = pair[cut + 1..].parse::<i64>().ok()?;
            Some((VertexId(u), VertexId(v)))
        })
        .ok_or_else(|| ParseError {
            line,
            col,
            msg: format!("expected '<u>-<v>', found '{pair}'"),
        })?;
    let label = match parts.next() {
        None => Label::Finite(3),
        Some("label") => {
            let tok = parts.next().ok_or_else(|| ParseError {
                line,
                col,
                msg: "label keyword requires a value".into(),
            })?;
            if tok == "inf" || tok == "infinity" || tok == "\u{221e}" {
                Label::Infinite
            } else {
                let m: u32 = tok.parse().map_err(|_| ParseError {
                    line,
                    col,
                    msg: format!("invalid label '{tok}'"),
                })?;
                if m < 2 {
                    return err(line, col, format!("label {m} is below 2"));
                }
                Label::Finite(m)
            }
        }
        Some(other) => return err(line, col, format!("unexpected token '{other}'")),
    };
    if parts.next().is_some() {
        return err(line, col, "trailing tokens after edge declaration");
    }
    let k = if u <= v { (u, v) } else { (v, u) };
    if let Some(&(prev_line, prev)) = b.edge_lines.get(&k) {
        if prev != label {
            return err(
                line,
                col,
                format!(
                    "edge {}-{} declared with label {} here but {} on line {}",
                    k.0, k.1, label, prev, prev_line
                ),
            );
        }
    } else {
        b.edge_lines.insert(k, (line, label));
    }
    b.edges.push((u, v, label));
    Ok(())
}

fn parse_symmetry(
    rest: &str,
    line: usize,
    col: usize,
    b: &mut Builder,
) -> Result<(), ParseError> {
    let (name, cycles) = match rest.split_once(':') {
        Some((n, c)) => (n.trim(), c.trim()),
        None => match rest.split_once(char::is_whitespace) {
            Some((n, c)) => (n.trim(), c.trim()),
            None => return err(line, col, "symmetry requires '<name>: <cycles>'"),
        },
    };
    if name.is_empty() {
        return err(line, col, "symmetry requires a name");
    }
    if b.symmetries.contains_key(name) {
        return err(line, col, format!("duplicate symmetry '{name}'"));
    }
    let mut mapping: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut moved: BTreeSet<VertexId> = BTreeSet::new();
    let mut chars = cycles.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return err(line, col, format!("expected '(' in cycle notation, found '{c}'"));
        }
        chars.next();
        let mut body = String::new();
        loop {
            match chars.next() {
                Some(')') => break,
                Some(ch) => body.push(ch),
                None => return err(line, col, "unclosed cycle"),
            }
        }
        let members: Vec<VertexId> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|tok| parse_vertex(tok, line, col))
            .collect::<Result<_, _>>()?;
        for w in &members {
            if !moved.insert(*w) {
                return err(line, col, format!("vertex {w} appears in two cycles"));
            }
        }
        for (i, &v) in members.iter().enumerate() {
            let image = members[(i + 1) % members.len()];
            mapping.insert(v, image);
        }
    }
    b.symmetries.insert(name.to_string(), mapping);
    Ok(())
}

/// Parse just the graph from a document (the first operation of the text
/// interface).
pub fn parse_graph(text: &str) -> Result<Arc<CoxeterGraph>, ParseError> {
    parse_document(text).map(|p| p.graph)
}

/// Complete a partial symmetry mapping with fixed points.
pub fn complete_mapping(
    graph: &CoxeterGraph,
    partial: &BTreeMap<VertexId, VertexId>,
) -> BTreeMap<VertexId, VertexId> {
    graph
        .vertices()
        .iter()
        .map(|&v| (v, partial.get(&v).copied().unwrap_or(v)))
        .collect()
}
