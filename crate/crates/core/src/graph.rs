//! Finite directed multigraphs.
//!
//! Edge direction: an edge `e` points from `s(e)` to `r(e)`. The second
//! Cuntz-Krieger relation sums over the edges *into* a vertex,
//! `P_v = sum_{r(e)=v} S_e S_e^*`, so the in-degree `|r^{-1}(v)|` is what
//! governs entries, saturation and the regular vertices, while the
//! out-degree `|s^{-1}(v)|` governs sinks and the weights of the isometry `T`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::intmatrix::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIx(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIx(pub usize);

/// Short content hash identifying a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub [u8; 8]);

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for Fingerprint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeRecord {
    id: String,
    src: VertexIx,
    rng: VertexIx,
}

#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    vertex_index: HashMap<String, VertexIx>,
    edge_index: HashMap<String, EdgeIx>,
    out_edges: Vec<Vec<EdgeIx>>,
    in_edges: Vec<Vec<EdgeIx>>,
    fingerprint: Fingerprint,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// Structured (JSON) form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub src: String,
    pub rng: String,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| !c.is_whitespace() && !":>#,.[]*".contains(c))
}

struct Builder {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexIx>,
    edges: Vec<EdgeRecord>,
    edge_index: HashMap<String, EdgeIx>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            vertices: Vec::new(),
            vertex_index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
        }
    }

    fn add_vertex(&mut self, id: &str, location: &str, strict: bool) -> Result<VertexIx> {
        if let Some(&v) = self.vertex_index.get(id) {
            if strict {
                return Err(Error::DuplicateId {
                    location: location.to_string(),
                    kind: "vertex",
                    id: id.to_string(),
                });
            }
            return Ok(v);
        }
        let v = VertexIx(self.vertices.len());
        self.vertices.push(id.to_string());
        self.vertex_index.insert(id.to_string(), v);
        Ok(v)
    }

    fn add_edge(&mut self, id: &str, src: VertexIx, rng: VertexIx, location: &str) -> Result<()> {
        if self.edge_index.contains_key(id) {
            return Err(Error::DuplicateId {
                location: location.to_string(),
                kind: "edge",
                id: id.to_string(),
            });
        }
        self.edge_index.insert(id.to_string(), EdgeIx(self.edges.len()));
        self.edges.push(EdgeRecord {
            id: id.to_string(),
            src,
            rng,
        });
        Ok(())
    }

    fn finish(self) -> Result<Graph> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = self.vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.src.0].push(EdgeIx(i));
            in_edges[e.rng.0].push(EdgeIx(i));
        }
        let mut g = Graph {
            vertices: self.vertices,
            edges: self.edges,
            vertex_index: self.vertex_index,
            edge_index: self.edge_index,
            out_edges,
            in_edges,
            fingerprint: Fingerprint([0; 8]),
        };
        let digest = Sha256::digest(g.to_text().as_bytes());
        let mut fp = [0u8; 8];
        fp.copy_from_slice(&digest[..8]);
        g.fingerprint = Fingerprint(fp);
        Ok(g)
    }
}

impl Graph {
    /// Builds a graph from explicit vertex and `(id, src, rng)` edge lists.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let doc = GraphDocument {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, s, r)| EdgeDocument {
                    id: id.as_ref().to_string(),
                    src: s.as_ref().to_string(),
                    rng: r.as_ref().to_string(),
                })
                .collect(),
        };
        Self::from_document(&doc)
    }

    /// Parses the line-oriented text format.
    ///
    /// ```text
    /// # Example: a source feeding a loop
    /// vertex v
    /// f: v > w
    /// e: w > w
    /// ```
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut b = Builder::new();
        for (lineno, raw) in input.lines().enumerate() {
            let line_no = lineno + 1;
            let location = format!("line {line_no}");
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax {
                line: line_no,
                message,
            };
            if let Some((id, rest)) = line.split_once(':') {
                let id = id.trim();
                let (src, rng) = rest
                    .split_once('>')
                    .ok_or_else(|| syntax(format!("expected `<src> > <rng>` after `{id}:`")))?;
                let (src, rng) = (src.trim(), rng.trim());
                for part in [id, src, rng] {
                    if !valid_id(part) {
                        return Err(syntax(format!("invalid identifier `{part}`")));
                    }
                }
                let s = b.add_vertex(src, &location, false)?;
                let r = b.add_vertex(rng, &location, false)?;
                b.add_edge(id, s, r, &location)?;
            } else {
                let mut words = line.split_whitespace();
                match (words.next(), words.next(), words.next()) {
                    (Some("vertex"), Some(id), None) if valid_id(id) => {
                        b.add_vertex(id, &location, true)?;
                    }
                    _ => return Err(syntax(format!("unrecognised line `{line}`"))),
                }
            }
        }
        b.finish()
    }

    pub fn parse_json(input: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(input).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_document(&doc)
    }

    /// Accepts either format; documents starting with `{` are read as JSON.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let mut b = Builder::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if !valid_id(v) {
                return Err(Error::Document(format!("vertices[{i}]: invalid identifier `{v}`")));
            }
            b.add_vertex(v, &format!("vertices[{i}]"), true)?;
        }
        for (i, e) in doc.edges.iter().enumerate() {
            let location = format!("edges[{i}]");
            if !valid_id(&e.id) {
                return Err(Error::Document(format!("{location}: invalid identifier `{}`", e.id)));
            }
            let lookup = |name: &str| {
                b.vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::UnknownEndpoint {
                        location: location.clone(),
                        edge: e.id.clone(),
                        vertex: name.to_string(),
                    })
            };
            let s = lookup(&e.src)?;
            let r = lookup(&e.rng)?;
            b.add_edge(&e.id, s, r, &location)?;
        }
        b.finish()
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    id: e.id.clone(),
                    src: self.vertices[e.src.0].clone(),
                    rng: self.vertices[e.rng.0].clone(),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str("vertex ");
            out.push_str(v);
            out.push('\n');
        }
        for e in &self.edges {
            out.push_str(&format!(
                "{}: {} > {}\n",
                e.id, self.vertices[e.src.0], self.vertices[e.rng.0]
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph document serializes")
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexIx> + '_ {
        (0..self.vertices.len()).map(VertexIx)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeIx> + '_ {
        (0..self.edges.len()).map(EdgeIx)
    }

    pub fn vertex_name(&self, v: VertexIx) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeIx) -> &str {
        &self.edges[e.0].id
    }

    pub fn vertex(&self, name: &str) -> Result<VertexIx> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<EdgeIx> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn source(&self, e: EdgeIx) -> VertexIx {
        self.edges[e.0].src
    }

    pub fn range(&self, e: EdgeIx) -> VertexIx {
        self.edges[e.0].rng
    }

    /// `s^{-1}(v)`
    pub fn out_edges(&self, v: VertexIx) -> &[EdgeIx] {
        &self.out_edges[v.0]
    }

    /// `r^{-1}(v)`
    pub fn in_edges(&self, v: VertexIx) -> &[EdgeIx] {
        &self.in_edges[v.0]
    }

    pub fn out_degree(&self, v: VertexIx) -> usize {
        self.out_edges[v.0].len()
    }

    pub fn in_degree(&self, v: VertexIx) -> usize {
        self.in_edges[v.0].len()
    }

    pub fn vertex_names<'a, I: IntoIterator<Item = &'a VertexIx>>(&self, set: I) -> Vec<String> {
        set.into_iter()
            .map(|&v| self.vertex_name(v).to_string())
            .collect()
    }

    pub fn has_sink(&self) -> bool {
        self.vertices().any(|v| self.out_degree(v) == 0)
    }

    pub(crate) fn require_no_sinks(&self) -> Result<()> {
        match self.vertices().find(|&v| self.out_degree(v) == 0) {
            Some(v) => Err(Error::HypothesisViolated(format!(
                "vertex `{}` is a sink",
                self.vertex_name(v)
            ))),
            None => Ok(()),
        }
    }

    pub(crate) fn check_fingerprint(&self, fp: Fingerprint) -> Result<()> {
        if self.fingerprint == fp {
            Ok(())
        } else {
            Err(Error::FingerprintMismatch)
        }
    }
}

/// Findings about sinks, sources and singular vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub sinks: Vec<String>,
    pub sources: Vec<String>,
    pub singular: Vec<String>,
    pub hypotheses_ok: bool,
}

pub fn validate(g: &Graph) -> ValidationReport {
    let sinks: Vec<VertexIx> = g.vertices().filter(|&v| g.out_degree(v) == 0).collect();
    let sources: Vec<VertexIx> = g.vertices().filter(|&v| g.in_degree(v) == 0).collect();
    // every receiver is finite here, so the singular vertices are exactly the sources
    let singular = sources.clone();
    ValidationReport {
        hypotheses_ok: sinks.is_empty(),
        sinks: g.vertex_names(&sinks),
        sources: g.vertex_names(&sources),
        singular: g.vertex_names(&singular),
    }
}

/// `A[u][w] = #{e : s(e) = u, r(e) = w}`.
pub fn adjacency(g: &Graph) -> IntMatrix {
    let n = g.vertex_count();
    let mut a = IntMatrix::zeros(n, n);
    for e in g.edges() {
        a[(g.source(e).0, g.range(e).0)] += BigInt::from(1);
    }
    a
}

/// Number of paths of length `n` from `u` to `w`, as the matrix `A^n`.
pub fn path_count(g: &Graph, n: u32) -> IntMatrix {
    adjacency(g).pow(n)
}

/// A finite path. Edges are stored in operator order: `edges[0]` is the
/// outermost (last traversed) edge, so `S_path = S_{edges[0]} S_{edges[1]} ...`.
/// A length-zero path is the vertex `source` itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    edges: Vec<EdgeIx>,
    source: VertexIx,
}

impl Path {
    pub fn vertex(v: VertexIx) -> Self {
        Path {
            edges: Vec::new(),
            source: v,
        }
    }

    pub fn edge(g: &Graph, e: EdgeIx) -> Self {
        Path {
            edges: vec![e],
            source: g.source(e),
        }
    }

    /// Builds a path from edges in operator order, checking composability.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeIx>) -> Result<Self> {
        let Some(&last) = edges.last() else {
            return Err(Error::InvalidPath("empty edge list".into()));
        };
        for w in edges.windows(2) {
            if g.source(w[0]) != g.range(w[1]) {
                return Err(Error::InvalidPath(format!(
                    "`{}` cannot follow `{}`",
                    g.edge_name(w[0]),
                    g.edge_name(w[1])
                )));
            }
        }
        Ok(Path {
            source: g.source(last),
            edges,
        })
    }

    /// Parses `e.f.g` (operator order) or a single vertex id.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let text = text.trim();
        if let Ok(v) = g.vertex(text) {
            if g.edge(text).is_err() {
                return Ok(Path::vertex(v));
            }
        }
        let edges = text
            .split('.')
            .map(|id| g.edge(id.trim()))
            .collect::<Result<Vec<_>>>()?;
        Path::from_edges(g, edges)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeIx] {
        &self.edges
    }

    pub fn source(&self) -> VertexIx {
        self.source
    }

    pub fn range(&self, g: &Graph) -> VertexIx {
        self.edges.first().map_or(self.source, |&e| g.range(e))
    }

    /// `outer ∘ inner`: traverse `inner` first, then `outer`. Requires `s(outer) = r(inner)`.
    pub fn compose(g: &Graph, outer: &Path, inner: &Path) -> Option<Path> {
        if outer.source != inner.range(g) {
            return None;
        }
        let mut edges = outer.edges.clone();
        edges.extend_from_slice(&inner.edges);
        Some(Path {
            edges,
            source: inner.source,
        })
    }

    /// If `prefix` is an outer segment of `self` (`self = prefix ∘ rest`), returns `rest`.
    pub fn strip_outer(&self, g: &Graph, prefix: &Path) -> Option<Path> {
        if prefix.len() > self.len() || self.edges[..prefix.len()] != prefix.edges[..] {
            return None;
        }
        if prefix.is_empty() {
            return (self.range(g) == prefix.source).then(|| self.clone());
        }
        let rest = &self.edges[prefix.len()..];
        Some(Path {
            edges: rest.to_vec(),
            source: self.source,
        })
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.source).to_string()
        } else {
            self.edges
                .iter()
                .map(|&e| g.edge_name(e))
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Vertices visited from the source outward: `s, r(e_1), ..., r(e_n)`.
    pub fn visited(&self, g: &Graph) -> Vec<VertexIx> {
        let mut out = vec![self.source];
        out.extend(self.edges.iter().rev().map(|&e| g.range(e)));
        out
    }
}

/// All paths of length exactly `n` with source `v`, in operator-order lexicographic order.
pub fn paths_from(g: &Graph, v: VertexIx, n: usize) -> Vec<Path> {
    let mut layer = vec![Path::vertex(v)];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &layer {
            for &e in g.out_edges(p.range(g)) {
                let mut edges = vec![e];
                edges.extend_from_slice(&p.edges);
                next.push(Path { edges, source: v });
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

/// All paths of length exactly `n`, ordered lexicographically by edge sequence
/// (vertices by index when `n = 0`).
pub fn paths_of_length(g: &Graph, n: usize) -> Vec<Path> {
    let mut all: Vec<Path> = g.vertices().flat_map(|v| paths_from(g, v, n)).collect();
    all.sort();
    all
}

/// A cycle `e_1 ... e_n` in traversal order: `r(e_i) = s(e_{i+1})`, `r(e_n) = s(e_1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<EdgeIx>,
}

impl Cycle {
    pub fn new(g: &Graph, edges: Vec<EdgeIx>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidCycle("a cycle needs at least one edge".into()));
        }
        let n = edges.len();
        for i in 0..n {
            let (a, b) = (edges[i], edges[(i + 1) % n]);
            if g.range(a) != g.source(b) {
                return Err(Error::InvalidCycle(format!(
                    "`{}` does not continue `{}`",
                    g.edge_name(b),
                    g.edge_name(a)
                )));
            }
        }
        Ok(Cycle { edges })
    }

    pub fn from_ids<S: AsRef<str>>(g: &Graph, ids: &[S]) -> Result<Self> {
        let edges = ids
            .iter()
            .map(|id| g.edge(id.as_ref().trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, edges)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeIx] {
        &self.edges
    }

    /// `r(e_1), ..., r(e_n)`; the last one is the base vertex `s(e_1)`.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexIx> {
        self.edges.iter().map(|&e| g.range(e)).collect()
    }

    pub fn base(&self, g: &Graph) -> VertexIx {
        g.source(self.edges[0])
    }

    /// The cycle as a path from its base vertex back to itself.
    pub fn as_path(&self, g: &Graph) -> Path {
        Path::from_edges(g, self.edges.iter().rev().copied().collect())
            .expect("cycle edges compose")
    }

    /// Rotation starting at the lexicographically least edge id.
    pub fn canonical(&self, g: &Graph) -> Cycle {
        let start = (0..self.edges.len())
            .min_by(|&i, &j| g.edge_name(self.edges[i]).cmp(g.edge_name(self.edges[j])))
            .expect("nonempty");
        let mut edges = self.edges[start..].to_vec();
        edges.extend_from_slice(&self.edges[..start]);
        Cycle { edges }
    }

    pub fn ids(&self, g: &Graph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge_name(e).to_string()).collect()
    }

    /// First cycle vertex with in-degree at least two, if any.
    pub fn entry(&self, g: &Graph) -> Option<VertexIx> {
        self.vertices(g).into_iter().find(|&v| g.in_degree(v) >= 2)
    }
}

/// Finds a cycle without entries by following unique in-edges.
///
/// Only vertices of in-degree exactly one can lie on such a cycle; they form a
/// functional graph (each points back to the source of its unique in-edge),
/// whose cycles are precisely the entryless cycles.
pub fn find_entryless_cycle(g: &Graph) -> Result<Option<Cycle>> {
    g.require_no_sinks()?;
    let n = g.vertex_count();
    let pred_edge = |v: VertexIx| -> Option<EdgeIx> {
        match g.in_edges(v) {
            [e] => Some(*e),
            _ => None,
        }
    };
    // 0 = unvisited, 1 = on current walk, 2 = done
    let mut state = vec![0u8; n];
    for start in g.vertices() {
        if state[start.0] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = start;
        loop {
            match state[v.0] {
                2 => break,
                1 => {
                    let pos = walk.iter().position(|&(u, _)| u == v).expect("on walk");
                    // walk holds (vertex, in-edge) going backwards; reverse into traversal order
                    let mut edges: Vec<EdgeIx> = walk[pos..].iter().map(|&(_, e)| e).collect();
                    edges.reverse();
                    let cycle = Cycle::new(g, edges)?;
                    return Ok(Some(cycle.canonical(g)));
                }
                _ => {}
            }
            let Some(e) = pred_edge(v) else { break };
            state[v.0] = 1;
            walk.push((v, e));
            v = g.source(e);
        }
        for &(u, _) in &walk {
            state[u.0] = 2;
        }
        state[start.0] = 2;
    }
    Ok(None)
}

/// All simple cycles of length at most `max_len`, canonically rotated and sorted.
pub fn all_cycles_upto(g: &Graph, max_len: usize) -> Vec<Cycle> {
    let mut found: BTreeSet<Vec<EdgeIx>> = BTreeSet::new();
    let mut stack: Vec<EdgeIx> = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];

    fn dfs(
        g: &Graph,
        start: VertexIx,
        v: VertexIx,
        max_len: usize,
        stack: &mut Vec<EdgeIx>,
        on_path: &mut [bool],
        found: &mut BTreeSet<Vec<EdgeIx>>,
    ) {
        if stack.len() == max_len {
            return;
        }
        for &e in g.out_edges(v) {
            let w = g.range(e);
            if w == start {
                stack.push(e);
                let c = Cycle {
                    edges: stack.clone(),
                };
                found.insert(c.canonical(g).edges);
                stack.pop();
            } else if w > start && !on_path[w.0] {
                on_path[w.0] = true;
                stack.push(e);
                dfs(g, start, w, max_len, stack, on_path, found);
                stack.pop();
                on_path[w.0] = false;
            }
        }
    }

    for start in g.vertices() {
        on_path[start.0] = true;
        dfs(g, start, start, max_len, &mut stack, &mut on_path, &mut found);
        on_path[start.0] = false;
    }
    let mut cycles: Vec<Cycle> = found.into_iter().map(|edges| Cycle { edges }).collect();
    cycles.sort_by(|a, b| a.ids(g).cmp(&b.ids(g)));
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex5() -> Graph {
        Graph::parse_text("f: v > w\ne: w > w").unwrap()
    }

    #[test]
    fn parses_example5_text() {
        let g = ex5();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.vertex_name(VertexIx(0)), "v");
        assert_eq!(g.edge_name(EdgeIx(0)), "f");
        assert_eq!(g.source(EdgeIx(0)), VertexIx(0));
        assert_eq!(g.range(EdgeIx(1)), VertexIx(1));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(Graph::parse_text(""), Err(Error::EmptyGraph));
        assert_eq!(Graph::parse_text("# only a comment\n"), Err(Error::EmptyGraph));
    }

    #[test]
    fn structured_single_loop() {
        let g = Graph::parse_json(r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","rng":"v"}]}"#)
            .unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
    }

    #[test]
    fn parse_errors_carry_locations() {
        let err = Graph::parse_text("a: v > w\na: w > v").unwrap_err();
        assert!(matches!(err, Error::DuplicateId { ref location, .. } if location == "line 2"));
        let err = Graph::parse_text("vertex v\nvertex v").unwrap_err();
        assert!(matches!(err, Error::DuplicateId { kind: "vertex", .. }));
        let err = Graph::parse_text("a: v w").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
        let err = Graph::parse_json(r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","rng":"x"}]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::UnknownEndpoint { ref location, .. } if location == "edges[0]"));
        assert!(matches!(Graph::parse_json("{\"vertices\":"), Err(Error::Document(_))));
    }

    #[test]
    fn validation_findings() {
        let r = validate(&ex5());
        assert_eq!(r.sources, vec!["v"]);
        assert_eq!(r.singular, vec!["v"]);
        assert!(r.sinks.is_empty() && r.hypotheses_ok);

        let r = validate(&Graph::parse_text("e: v > v").unwrap());
        assert!(r.sinks.is_empty() && r.sources.is_empty() && r.hypotheses_ok);

        let r = validate(&Graph::parse_text("a: v > w").unwrap());
        assert_eq!(r.sinks, vec!["w"]);
        assert!(!r.hypotheses_ok);
    }

    #[test]
    fn adjacency_examples() {
        let o2 = Graph::parse_text("a: v > v\nb: v > v").unwrap();
        assert_eq!(adjacency(&o2), IntMatrix::from_rows(&[vec![2]]));
        let ex4 = Graph::parse_text("a: v > w\nb: v > w\nc: w > v").unwrap();
        assert_eq!(adjacency(&ex4), IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]));
        let lone = Graph::parse_text("vertex v").unwrap();
        assert_eq!(adjacency(&lone), IntMatrix::from_rows(&[vec![0]]));
    }

    #[test]
    fn entryless_cycle_examples() {
        let loop1 = Graph::parse_text("e: v > v").unwrap();
        let c = find_entryless_cycle(&loop1).unwrap().unwrap();
        assert_eq!(c.ids(&loop1), vec!["e"]);

        let o2 = Graph::parse_text("a: v > v\nb: v > v").unwrap();
        assert!(find_entryless_cycle(&o2).unwrap().is_none());

        let two = Graph::parse_text("e1: v > w\ne2: w > v").unwrap();
        let c = find_entryless_cycle(&two).unwrap().unwrap();
        assert_eq!(c.ids(&two), vec!["e1", "e2"]);

        let sink = Graph::parse_text("a: v > w").unwrap();
        assert!(matches!(find_entryless_cycle(&sink), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn cycle_enumeration_examples() {
        let o2 = Graph::parse_text("a: v > v\nb: v > v").unwrap();
        let ids: Vec<_> = all_cycles_upto(&o2, 1).iter().map(|c| c.ids(&o2)).collect();
        assert_eq!(ids, vec![vec!["a"], vec!["b"]]);
        let g = ex5();
        let ids: Vec<_> = all_cycles_upto(&g, 2).iter().map(|c| c.ids(&g)).collect();
        assert_eq!(ids, vec![vec!["e"]]);
    }

    #[test]
    fn canonical_rotation() {
        let g = Graph::parse_text("z: v > w\ny: w > u\nx: u > v").unwrap();
        let c = Cycle::from_ids(&g, &["z", "y", "x"]).unwrap();
        assert_eq!(c.canonical(&g).ids(&g), vec!["x", "z", "y"]);
        assert!(Cycle::from_ids(&g, &["z", "x"]).is_err());
    }

    #[test]
    fn path_helpers() {
        let g = ex5();
        let p = Path::parse(&g, "e.f").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(g.vertex_name(p.source()), "v");
        assert_eq!(g.vertex_name(p.range(&g)), "w");
        assert!(Path::parse(&g, "f.e").is_err());
        let e = Path::parse(&g, "e").unwrap();
        assert_eq!(p.strip_outer(&g, &e).unwrap().display(&g), "f");
        let w = Path::parse(&g, "w").unwrap();
        assert_eq!(p.strip_outer(&g, &w).unwrap(), p);
        assert_eq!(Path::compose(&g, &e, &Path::parse(&g, "f").unwrap()).unwrap(), p);
        let names: Vec<_> = paths_of_length(&g, 2).iter().map(|p| p.display(&g)).collect();
        assert_eq!(names, vec!["e.f", "e.e"]);
    }
}
