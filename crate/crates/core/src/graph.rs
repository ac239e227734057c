//! Simple undirected graphs with dense vertex ids, stable edge ids and
//! hop-count shortest-path machinery.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Dense vertex id in `[0, n)`.
pub type VertexId = usize;
/// Edge id: the zero-based position of the edge in the input list.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge list is empty")]
    EmptyInput,
    #[error("self-loop on vertex {0}")]
    SelfLoop(u64),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(u64, u64),
    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(u64, u64),
    #[error("vertex id {0} is out of range")]
    InvalidVertex(VertexId),
    #[error("vertices {0} and {1} have more than one shortest path")]
    NotGeodetic(u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Parses the edge-list text format: one edge per line as two
/// whitespace-separated non-negative integers. Blank lines and lines whose
/// first non-blank character is `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Vec<(u64, u64)>, ParseError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError {
            line: idx + 1,
            message,
        };
        let mut tokens = line.split_whitespace();
        let mut next = |what: &str| -> Result<u64, ParseError> {
            let tok = tokens
                .next()
                .ok_or_else(|| err(format!("missing {what} endpoint")))?;
            tok.parse::<u64>()
                .map_err(|_| err(format!("invalid vertex label {tok:?}")))
        };
        let u = next("first")?;
        let v = next("second")?;
        if let Some(extra) = tokens.next() {
            return Err(err(format!("unexpected token {extra:?}")));
        }
        pairs.push((u, v));
    }
    Ok(pairs)
}

/// Immutable simple connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u64>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Builds a graph from raw labelled edges. Labels are remapped to dense
    /// ids in ascending label order; edge ids follow input order.
    pub fn from_edges(pairs: &[(u64, u64)]) -> Result<Self, GraphError> {
        if pairs.is_empty() {
            return Err(GraphError::EmptyInput);
        }
        let mut labels: Vec<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let index: HashMap<u64, VertexId> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        let mut seen = HashSet::with_capacity(pairs.len());
        let mut edges = Vec::with_capacity(pairs.len());
        let mut adjacency = vec![Vec::new(); labels.len()];
        for (id, &(a, b)) in pairs.iter().enumerate() {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::ParallelEdge(a.min(b), a.max(b)));
            }
            let (u, v) = (index[&a], index[&b]);
            edges.push((u, v));
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        let graph = Graph {
            labels,
            edges,
            adjacency,
        };
        let dist = graph.bfs_from(0);
        if let Some(far) = dist.iter().position(|d| d.is_none()) {
            return Err(GraphError::Disconnected(graph.labels[0], graph.labels[far]));
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Raw input label of a dense vertex id.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of a raw label, if present.
    pub fn vertex_of_label(&self, label: u64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok()
    }

    /// Raw-label edge key `"min,max"` used in all external output.
    pub fn edge_key(&self, e: EdgeId) -> String {
        let (u, v) = self.edges[e];
        let (a, b) = (self.labels[u], self.labels[v]);
        format!("{},{}", a.min(b), a.max(b))
    }

    /// Edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (scan, target) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[scan]
            .iter()
            .find(|&&(w, _)| w == target)
            .map(|&(_, e)| e)
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    fn bfs_from(&self, source: VertexId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap_or(0);
            for &(y, _) in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

impl fmt::Display for Graph {
    /// Writes the graph in edge-list text format using raw labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(u, v) in &self.edges {
            writeln!(f, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }
}

/// Builds a graph from raw labelled pairs.
pub fn build_graph(pairs: &[(u64, u64)]) -> Result<Graph, GraphError> {
    Graph::from_edges(pairs)
}

/// A simple path; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: VertexId,
    pub dist: Vec<u32>,
}

pub fn bfs_distances(g: &Graph, source: VertexId) -> Result<DistanceTable, GraphError> {
    g.check_vertex(source)?;
    let dist = g
        .bfs_from(source)
        .into_iter()
        .map(|d| d.expect("graph is connected"))
        .collect();
    Ok(DistanceTable { source, dist })
}

/// BFS tree rooted at one source. Each vertex keeps its lowest-id shortest
/// parent and whether a second shortest parent exists.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    source: VertexId,
    dist: Vec<u32>,
    parent: Vec<Option<(VertexId, EdgeId)>>,
    ambiguous: Vec<bool>,
}

impl ShortestPathTree {
    pub fn new(g: &Graph, source: VertexId) -> Result<Self, GraphError> {
        g.check_vertex(source)?;
        let n = g.vertex_count();
        let mut dist = vec![u32::MAX; n];
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        let mut ambiguous = vec![false; n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in g.neighbors(x) {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = Some((x, e));
                    queue.push_back(y);
                } else if dist[y] == dist[x] + 1 {
                    ambiguous[y] = true;
                    if let Some((p, _)) = parent[y] {
                        if x < p {
                            parent[y] = Some((x, e));
                        }
                    }
                }
            }
        }
        Ok(ShortestPathTree {
            source,
            dist,
            parent,
            ambiguous,
        })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn distance(&self, v: VertexId) -> u32 {
        self.dist[v]
    }

    pub fn parent(&self, v: VertexId) -> Option<(VertexId, EdgeId)> {
        self.parent[v]
    }

    /// Path from the source to `target`, failing if any vertex on it has two
    /// shortest parents.
    pub fn path_to(&self, g: &Graph, target: VertexId) -> Result<Path, GraphError> {
        g.check_vertex(target)?;
        let mut vertices = vec![target];
        let mut edges = Vec::with_capacity(self.dist[target] as usize);
        let mut cur = target;
        while let Some((p, e)) = self.parent[cur] {
            if self.ambiguous[cur] {
                return Err(GraphError::NotGeodetic(
                    g.label(self.source),
                    g.label(target),
                ));
            }
            vertices.push(p);
            edges.push(e);
            cur = p;
        }
        vertices.reverse();
        edges.reverse();
        Ok(Path { vertices, edges })
    }
}

/// The unique shortest `u,v` path of a geodetic graph.
pub fn unique_shortest_path(g: &Graph, u: VertexId, v: VertexId) -> Result<Path, GraphError> {
    ShortestPathTree::new(g, u)?.path_to(g, v)
}

/// Every shortest `u,v` path, in lexicographic order of vertex sequences.
/// Exponential in the worst case; intended for small graphs.
pub fn all_shortest_paths(g: &Graph, u: VertexId, v: VertexId) -> Result<Vec<Path>, GraphError> {
    g.check_vertex(v)?;
    let from_v = bfs_distances(g, v)?.dist;
    g.check_vertex(u)?;
    let mut out = Vec::new();
    let mut vertices = vec![u];
    let mut edges = Vec::new();
    walk_shortest(g, &from_v, v, &mut vertices, &mut edges, &mut out);
    out.sort();
    Ok(out)
}

fn walk_shortest(
    g: &Graph,
    to_target: &[u32],
    target: VertexId,
    vertices: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
    out: &mut Vec<Path>,
) {
    let cur = *vertices.last().expect("non-empty");
    if cur == target {
        out.push(Path {
            vertices: vertices.clone(),
            edges: edges.clone(),
        });
        return;
    }
    for &(w, e) in g.neighbors(cur) {
        if to_target[w] + 1 == to_target[cur] {
            vertices.push(w);
            edges.push(e);
            walk_shortest(g, to_target, target, vertices, edges, out);
            vertices.pop();
            edges.pop();
        }
    }
}
