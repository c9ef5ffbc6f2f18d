//! Coxeter graphs: generators as vertices, relation orders as edge labels.
//!
//! An absent edge means the two generators commute (order 2). Labels are
//! integers ≥ 3 or infinity; the file format writes infinity as `inf`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::Value as Json;
use thiserror::Error;

/// Index of a vertex inside its graph, in declaration order.
pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Finite(u32),
    Infinite,
}

impl EdgeLabel {
    pub fn parse(token: &str) -> Option<EdgeLabel> {
        if token == "inf" {
            return Some(EdgeLabel::Infinite);
        }
        token.parse::<u32>().ok().map(EdgeLabel::Finite)
    }

    /// Labels whose reflection weight is exact in Q(√2, √3, √5).
    pub fn is_exact(&self) -> bool {
        matches!(self, EdgeLabel::Infinite | EdgeLabel::Finite(3..=6))
    }
}

impl PartialOrd for EdgeLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use EdgeLabel::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Finite(m) => write!(f, "{m}"),
            EdgeLabel::Infinite => write!(f, "inf"),
        }
    }
}

/// An edge with endpoints normalized so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub label: EdgeLabel,
}

impl Edge {
    pub fn other(&self, end: Vertex) -> Vertex {
        if end == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, end: Vertex) -> bool {
        self.u == end || self.v == end
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid json graph: {0}")]
    Json(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge label must be an integer ≥ 3 or `inf`, got `{0}` (commuting pairs are written by omitting the edge)")]
    BadLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("vertex `{0}` already exists")]
    VertexExists(String),
    #[error("no edge between `{0}` and `{1}`")]
    NoSuchEdge(String, String),
    #[error("new label {new} does not exceed the current label {old}")]
    LabelNotLarger { old: EdgeLabel, new: EdgeLabel },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("word is empty")]
    EmptyWord,
}

#[derive(Clone)]
pub struct CoxeterGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    edges: Vec<Edge>,
    edge_at: HashMap<(Vertex, Vertex), usize>,
    adjacency: Vec<Vec<(Vertex, EdgeLabel)>>,
}

impl CoxeterGraph {
    pub fn new() -> Self {
        CoxeterGraph {
            names: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            edge_at: HashMap::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<Vertex, GraphError> {
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        self.adjacency.push(Vec::new());
        Ok(v)
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex, label: EdgeLabel) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(self.names[a].clone()));
        }
        if let EdgeLabel::Finite(m) = label {
            if m < 3 {
                return Err(GraphError::BadLabel(m.to_string()));
            }
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        if self.edge_at.contains_key(&(u, v)) {
            return Err(GraphError::DuplicateEdge(self.names[u].clone(), self.names[v].clone()));
        }
        self.edge_at.insert((u, v), self.edges.len());
        self.edges.push(Edge { u, v, label });
        self.adjacency[u].push((v, label));
        self.adjacency[v].push((u, label));
        self.adjacency[u].sort_by_key(|&(w, _)| w);
        self.adjacency[v].sort_by_key(|&(w, _)| w);
        Ok(())
    }

    pub fn add_edge_by_name(&mut self, a: &str, b: &str, label: EdgeLabel) -> Result<(), GraphError> {
        let a = self.vertex(a)?;
        let b = self.vertex(b)?;
        self.add_edge(a, b, label)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edge_at.get(&key).copied()
    }

    pub fn label(&self, a: Vertex, b: Vertex) -> Option<EdgeLabel> {
        self.edge_index(a, b).map(|i| self.edges[i].label)
    }

    /// Neighbours of `v` with edge labels, sorted by vertex index.
    pub fn neighbours(&self, v: Vertex) -> &[(Vertex, EdgeLabel)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn incident_edges(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.touches(v))
            .map(|(i, _)| i)
    }

    pub fn has_exact_labels(&self) -> bool {
        self.edges.iter().all(|e| e.label.is_exact())
    }

    pub fn bfs_distances(&self, start: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = std::collections::VecDeque::new();
        dist[start] = Some(0);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &(w, _) in self.neighbours(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertex_count()
    }

    /// Longest shortest path between any two vertices; graph must be connected.
    pub fn diameter(&self) -> usize {
        let mut best = 0;
        for v in 0..self.vertex_count() {
            for d in self.bfs_distances(v).iter().flatten() {
                best = best.max(*d);
            }
        }
        best
    }

    /// A copy with a fresh vertex attached to `s` by a single edge.
    pub fn extend_pendant(&self, s: Vertex, name: &str, label: EdgeLabel) -> Result<CoxeterGraph, GraphError> {
        if self.index.contains_key(name) {
            return Err(GraphError::VertexExists(name.to_string()));
        }
        let mut out = self.clone();
        let nv = out.add_vertex(name)?;
        out.add_edge(s, nv, label)?;
        Ok(out)
    }

    /// A copy with the label of edge (s, t) raised to `label`.
    pub fn increase_label(&self, s: Vertex, t: Vertex, label: EdgeLabel) -> Result<CoxeterGraph, GraphError> {
        let idx = self
            .edge_index(s, t)
            .ok_or_else(|| GraphError::NoSuchEdge(self.names[s].clone(), self.names[t].clone()))?;
        let old = self.edges[idx].label;
        if label <= old {
            return Err(GraphError::LabelNotLarger { old, new: label });
        }
        let mut out = self.clone();
        out.edges[idx].label = label;
        let (u, v) = (out.edges[idx].u, out.edges[idx].v);
        for (w, lab) in out.adjacency[u].iter_mut() {
            if *w == v {
                *lab = label;
            }
        }
        for (w, lab) in out.adjacency[v].iter_mut() {
            if *w == u {
                *lab = label;
            }
        }
        Ok(out)
    }

    /// Parses either the line-based `.cox` format or the JSON equivalent.
    pub fn parse(text: &str) -> Result<CoxeterGraph, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_cox(text)
        }
    }

    fn parse_cox(text: &str) -> Result<CoxeterGraph, GraphError> {
        let mut g = CoxeterGraph::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut parts = content.split_whitespace();
            let keyword = parts.next().unwrap();
            match keyword {
                "vertex" => {
                    let name = parts
                        .next()
                        .ok_or_else(|| GraphError::Syntax { line, msg: "vertex needs a name".into() })?;
                    if parts.next().is_some() {
                        return Err(GraphError::Syntax { line, msg: "vertex takes exactly one name".into() });
                    }
                    g.add_vertex(name).map_err(|e| GraphError::Syntax { line, msg: e.to_string() })?;
                }
                "edge" => {
                    let a = parts
                        .next()
                        .ok_or_else(|| GraphError::Syntax { line, msg: "edge needs two vertices and a label".into() })?;
                    let b = parts
                        .next()
                        .ok_or_else(|| GraphError::Syntax { line, msg: "edge needs two vertices and a label".into() })?;
                    let tok = parts
                        .next()
                        .ok_or_else(|| GraphError::Syntax { line, msg: "edge needs a label".into() })?;
                    if parts.next().is_some() {
                        return Err(GraphError::Syntax { line, msg: "edge takes exactly three fields".into() });
                    }
                    let label = EdgeLabel::parse(tok)
                        .ok_or_else(|| GraphError::Syntax { line, msg: format!("bad label `{tok}`") })?;
                    if let EdgeLabel::Finite(m) = label {
                        if m < 3 {
                            return Err(GraphError::Syntax {
                                line,
                                msg: GraphError::BadLabel(m.to_string()).to_string(),
                            });
                        }
                    }
                    let a = g.vertex(a).map_err(|e| GraphError::Syntax { line, msg: e.to_string() })?;
                    let b = g.vertex(b).map_err(|e| GraphError::Syntax { line, msg: e.to_string() })?;
                    g.add_edge(a, b, label).map_err(|e| GraphError::Syntax { line, msg: e.to_string() })?;
                }
                other => {
                    return Err(GraphError::Syntax { line, msg: format!("unknown keyword `{other}`") });
                }
            }
        }
        Ok(g)
    }

    fn parse_json(text: &str) -> Result<CoxeterGraph, GraphError> {
        let doc: Json = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let obj = doc.as_object().ok_or_else(|| GraphError::Json("expected an object".into()))?;
        let mut g = CoxeterGraph::new();
        let vertices = obj
            .get("vertices")
            .and_then(Json::as_array)
            .ok_or_else(|| GraphError::Json("missing `vertices` array".into()))?;
        for v in vertices {
            let name = v.as_str().ok_or_else(|| GraphError::Json("vertex names must be strings".into()))?;
            g.add_vertex(name)?;
        }
        let edges = obj
            .get("edges")
            .and_then(Json::as_array)
            .ok_or_else(|| GraphError::Json("missing `edges` array".into()))?;
        for e in edges {
            let triple = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                GraphError::Json("each edge must be [vertex, vertex, label]".into())
            })?;
            let a = triple[0].as_str().ok_or_else(|| GraphError::Json("edge endpoint must be a string".into()))?;
            let b = triple[1].as_str().ok_or_else(|| GraphError::Json("edge endpoint must be a string".into()))?;
            let label = match &triple[2] {
                Json::Number(n) => n
                    .as_u64()
                    .and_then(|m| u32::try_from(m).ok())
                    .map(EdgeLabel::Finite)
                    .ok_or_else(|| GraphError::BadLabel(triple[2].to_string()))?,
                Json::String(s) if s == "inf" => EdgeLabel::Infinite,
                other => return Err(GraphError::BadLabel(other.to_string())),
            };
            if let EdgeLabel::Finite(m) = label {
                if m < 3 {
                    return Err(GraphError::BadLabel(m.to_string()));
                }
            }
            g.add_edge_by_name(a, b, label)?;
        }
        Ok(g)
    }

    /// Canonical line-based form: vertices in declaration order, edges
    /// sorted by endpoint indices.
    pub fn to_cox_string(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("vertex {name}\n"));
        }
        let mut sorted: Vec<&Edge> = self.edges.iter().collect();
        sorted.sort_by_key(|e| (e.u, e.v));
        for e in sorted {
            out.push_str(&format!("edge {} {} {}\n", self.names[e.u], self.names[e.v], e.label));
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        let vertices: Vec<Json> = self.names.iter().map(|n| Json::String(n.clone())).collect();
        let mut sorted: Vec<&Edge> = self.edges.iter().collect();
        sorted.sort_by_key(|e| (e.u, e.v));
        let edges: Vec<Json> = sorted
            .iter()
            .map(|e| {
                let label = match e.label {
                    EdgeLabel::Finite(m) => Json::from(m),
                    EdgeLabel::Infinite => Json::String("inf".into()),
                };
                Json::Array(vec![
                    Json::String(self.names[e.u].clone()),
                    Json::String(self.names[e.v].clone()),
                    label,
                ])
            })
            .collect();
        serde_json::json!({ "vertices": vertices, "edges": edges }).to_string()
    }
}

impl Default for CoxeterGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for CoxeterGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.names != other.names {
            return false;
        }
        let set = |g: &CoxeterGraph| -> BTreeSet<(Vertex, Vertex, EdgeLabel)> {
            g.edges.iter().map(|e| (e.u, e.v, e.label)).collect()
        };
        set(self) == set(other)
    }
}

impl Eq for CoxeterGraph {}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph({} vertices, {} edges)", self.names.len(), self.edges.len())
    }
}
