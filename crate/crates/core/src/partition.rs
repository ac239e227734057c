//! Black-white partitions: the canonical construction from cycle segments,
//! a validator for arbitrary candidates, and the `|E_B|` lower bound.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::antipodal::{AntipodalIndex, SegmentCatalog};
use crate::decomposition::{Classification, Decomposition};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shade {
    Black,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("canonical partition needs a tree or a non-cycle odd cactus, got {0}")]
    NotApplicable(&'static str),
    #[error("partition fails property {property}")]
    InvalidPartition { property: u8 },
    #[error("partition sizes do not match the graph")]
    SizeMismatch,
}

/// A shade for every vertex and every edge. Disjointness and coverage of the
/// four sets hold by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlackWhitePartition {
    vertices: Vec<Shade>,
    edges: Vec<Shade>,
}

impl BlackWhitePartition {
    pub fn new(vertices: Vec<Shade>, edges: Vec<Shade>) -> Self {
        BlackWhitePartition { vertices, edges }
    }

    pub fn all_white(g: &Graph) -> Self {
        BlackWhitePartition {
            vertices: vec![Shade::White; g.vertex_count()],
            edges: vec![Shade::White; g.edge_count()],
        }
    }

    pub fn vertex(&self, v: VertexId) -> Shade {
        self.vertices[v]
    }

    pub fn edge(&self, e: EdgeId) -> Shade {
        self.edges[e]
    }

    pub fn set_vertex(&mut self, v: VertexId, shade: Shade) {
        self.vertices[v] = shade;
    }

    pub fn set_edge(&mut self, e: EdgeId, shade: Shade) {
        self.edges[e] = shade;
    }

    pub fn vertex_shades(&self) -> &[Shade] {
        &self.vertices
    }

    pub fn edge_shades(&self) -> &[Shade] {
        &self.edges
    }

    pub fn black_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e] == Shade::Black)
    }

    pub fn white_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e] == Shade::White)
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v] == Shade::Black)
    }

    pub fn white_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v] == Shade::White)
    }

    pub fn black_edge_count(&self) -> usize {
        self.black_edges().count()
    }
}

/// Canonical partition: segment elements of classes S1/S2 plus cut
/// vertices, leaves and cut edges are black; everything else is white.
pub fn build_canonical_partition(
    g: &Graph,
    d: &Decomposition,
    class: Classification,
    cat: &SegmentCatalog,
) -> Result<BlackWhitePartition, PartitionError> {
    match class {
        Classification::Tree | Classification::GeneralOddCactus => {}
        other => return Err(PartitionError::NotApplicable(other.tag())),
    }
    let mut p = BlackWhitePartition::all_white(g);
    for &v in &d.cut_vertices {
        p.set_vertex(v, Shade::Black);
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) == 1 {
            p.set_vertex(v, Shade::Black);
        }
    }
    for &e in &d.cut_edges {
        p.set_edge(e, Shade::Black);
    }
    for seg in cat.segments.iter().filter(|s| s.class.is_black()) {
        for v in seg.vertices() {
            p.set_vertex(v, Shade::Black);
        }
        for e in seg.edges() {
            p.set_edge(e, Shade::Black);
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Edge(EdgeId),
    VertexEdge(VertexId, EdgeId),
    /// A white cut vertex and two black edges in different components of
    /// the graph with that vertex removed.
    SplitBlackEdges(VertexId, EdgeId, EdgeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: u8,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: [PropertyCheck; 4],
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(property: u8, witness: Option<Witness>) -> PropertyCheck {
    PropertyCheck {
        property,
        passed: witness.is_none(),
        witness,
    }
}

pub fn validate_partition(
    g: &Graph,
    d: &Decomposition,
    a: &AntipodalIndex,
    p: &BlackWhitePartition,
) -> Result<ValidationReport, PartitionError> {
    if p.vertices.len() != g.vertex_count() || p.edges.len() != g.edge_count() {
        return Err(PartitionError::SizeMismatch);
    }
    let m = g.edge_count();

    // 1: a cycle edge is black iff its antipode is white.
    let p1 = (0..m)
        .find(|&e| match a.opposite_vertex(e) {
            Some(w) => (p.edge(e) == Shade::Black) != (p.vertex(w) == Shade::White),
            None => false,
        })
        .map(Witness::Edge);

    // 2: black edges have black endpoints.
    let p2 = p
        .black_edges()
        .find(|&e| {
            let (u, v) = g.endpoints(e);
            p.vertex(u) == Shade::White || p.vertex(v) == Shade::White
        })
        .map(Witness::Edge);

    // 3: edges at white vertices are white.
    let p3 = p.white_vertices().find_map(|v| {
        g.neighbors(v)
            .iter()
            .find(|&&(_, e)| p.edge(e) == Shade::Black)
            .map(|&(_, e)| Witness::VertexEdge(v, e))
    });

    // 4: black edges stay in one component after deleting a white cut vertex.
    let p4 = d
        .cut_vertices
        .iter()
        .filter(|&&v| p.vertex(v) == Shade::White)
        .find_map(|&v| split_black_edges(g, p, v));

    Ok(ValidationReport {
        checks: [check(1, p1), check(2, p2), check(3, p3), check(4, p4)],
    })
}

fn split_black_edges(g: &Graph, p: &BlackWhitePartition, removed: VertexId) -> Option<Witness> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if s == removed || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in g.neighbors(x) {
                if y != removed && comp[y] == usize::MAX {
                    comp[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    let component_of = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        if u == removed {
            comp[v]
        } else {
            comp[u]
        }
    };
    let mut black = p.black_edges();
    let first = black.next()?;
    let home = component_of(first);
    black
        .find(|&e| component_of(e) != home)
        .map(|e| Witness::SplitBlackEdges(removed, first, e))
}

/// `|E_B|` of a validated partition, a lower bound on the strong rainbow
/// connection number.
pub fn lower_bound(
    p: &BlackWhitePartition,
    report: &ValidationReport,
) -> Result<usize, PartitionError> {
    match report.first_failure() {
        Some(c) => Err(PartitionError::InvalidPartition {
            property: c.property,
        }),
        None => Ok(p.black_edge_count()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Analysis;
    use crate::fixtures::{self, e, v};

    fn canonical(g: crate::graph::Graph) -> (Analysis, BlackWhitePartition) {
        let an = Analysis::new(g);
        let p = an.canonical_partition().unwrap();
        (an, p)
    }

    #[test]
    fn example_canonical_partition() {
        let (an, p) = canonical(fixtures::example02());
        let black: Vec<_> = p.black_edges().collect();
        let expected: Vec<_> = [4, 5, 6, 8, 9, 10, 11].map(e).to_vec();
        assert_eq!(black, expected);
        let white: Vec<_> = p.white_edges().collect();
        assert_eq!(white, [1, 2, 3, 7, 12, 13].map(e).to_vec());
        let white_v: Vec<_> = p.white_vertices().collect();
        assert_eq!(white_v, [1, 2, 3, 12].map(v).to_vec());
        let report = an.validate(&p).unwrap();
        assert!(report.is_valid(), "{report:?}");
        assert_eq!(lower_bound(&p, &report), Ok(7));
    }

    #[test]
    fn tree_partition_is_all_black() {
        let (an, p) = canonical(fixtures::path(6));
        assert_eq!(p.black_edge_count(), 5);
        assert_eq!(p.white_vertices().count(), 0);
        let report = an.validate(&p).unwrap();
        assert_eq!(lower_bound(&p, &report), Ok(5));
    }

    #[test]
    fn bowtie_has_two_black_edges() {
        let (an, p) = canonical(fixtures::bowtie());
        let report = an.validate(&p).unwrap();
        assert_eq!(lower_bound(&p, &report), Ok(2));
        for e in p.black_edges() {
            let (a, b) = an.graph.endpoints(e);
            assert!(a == 0 || b == 0, "black edges touch the hub");
        }
    }

    #[test]
    fn black_edge_with_white_endpoint_fails_property_two() {
        let (an, mut p) = canonical(fixtures::example02());
        p.set_vertex(v(5), Shade::White);
        let report = an.validate(&p).unwrap();
        assert!(!report.checks[1].passed);
        assert_eq!(report.checks[1].witness, Some(Witness::Edge(e(4))));
        assert_eq!(
            report.checks[2].witness,
            Some(Witness::VertexEdge(v(5), e(4)))
        );
        assert_eq!(
            lower_bound(&p, &report),
            Err(PartitionError::InvalidPartition { property: 1 })
        );
    }

    #[test]
    fn all_white_partition() {
        let an = Analysis::new(fixtures::example02());
        let p = BlackWhitePartition::all_white(&an.graph);
        let report = an.validate(&p).unwrap();
        assert!(!report.checks[0].passed);
        assert!(report.checks[1].passed && report.checks[2].passed && report.checks[3].passed);

        let tree = Analysis::new(fixtures::path(4));
        let p = BlackWhitePartition::all_white(&tree.graph);
        let report = tree.validate(&p).unwrap();
        assert!(report.is_valid());
        assert_eq!(lower_bound(&p, &report), Ok(0));
    }

    #[test]
    fn white_cut_vertex_splitting_black_edges_fails_property_four() {
        let an = Analysis::new(fixtures::path(3));
        let mut p = an.canonical_partition().unwrap();
        p.set_vertex(v(2), Shade::White);
        let report = an.validate(&p).unwrap();
        assert_eq!(
            report.checks[3].witness,
            Some(Witness::SplitBlackEdges(v(2), 0, 1))
        );
    }

    #[test]
    fn odd_cycle_has_no_canonical_partition() {
        let an = Analysis::new(fixtures::cycle(5));
        assert_eq!(
            an.canonical_partition(),
            Err(PartitionError::NotApplicable("OddCycle"))
        );
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let an = Analysis::new(fixtures::cycle(5));
        let p = BlackWhitePartition::new(vec![Shade::Black], vec![]);
        assert_eq!(an.validate(&p), Err(PartitionError::SizeMismatch));
    }
}
