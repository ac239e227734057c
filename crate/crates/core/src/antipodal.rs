//! Antipodal vertex/edge pairs of odd cycles, the edge set `E_ant`, and the
//! decomposition of every cycle into classified segments.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{Block, BlockId, BlockKind, Decomposition};
use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentError {
    #[error("edge {0} is not in the cycle")]
    EdgeNotInCycle(EdgeId),
    #[error("vertex {0} is not in the cycle")]
    VertexNotInCycle(VertexId),
    #[error("block is not an odd cycle")]
    NotOddCycle,
}

fn half(block: &Block) -> Result<usize, SegmentError> {
    if block.kind != BlockKind::Cycle || block.len() % 2 == 0 {
        return Err(SegmentError::NotOddCycle);
    }
    Ok((block.len() - 1) / 2)
}

/// The vertex of an odd cycle equidistant from both endpoints of `e`.
pub fn antipodal_vertex(block: &Block, e: EdgeId) -> Result<VertexId, SegmentError> {
    let h = half(block)?;
    let i = block
        .position_of_edge(e)
        .ok_or(SegmentError::EdgeNotInCycle(e))?;
    Ok(block.vertices[(i + 1 + h) % block.len()])
}

/// The edge of an odd cycle opposite `v`; inverse of [`antipodal_vertex`].
pub fn antipodal_edge(block: &Block, v: VertexId) -> Result<EdgeId, SegmentError> {
    let h = half(block)?;
    let j = block
        .position_of_vertex(v)
        .ok_or(SegmentError::VertexNotInCycle(v))?;
    Ok(block.edges[(j + h) % block.len()])
}

/// O(1) antipodal lookups over every odd cycle of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodalIndex {
    opposite_vertex: Vec<Option<VertexId>>,
    is_e_ant: Vec<bool>,
    e_ant: Vec<EdgeId>,
}

impl AntipodalIndex {
    pub fn new(d: &Decomposition) -> Self {
        let m = d.edge_count();
        let mut opposite_vertex = vec![None; m];
        for (_, block) in d.cycles() {
            let Ok(h) = half(block) else { continue };
            let n = block.len();
            for (i, &e) in block.edges.iter().enumerate() {
                opposite_vertex[e] = Some(block.vertices[(i + 1 + h) % n]);
            }
        }
        let is_e_ant: Vec<bool> = opposite_vertex
            .iter()
            .map(|w| w.is_some_and(|w| d.is_cut_vertex(w)))
            .collect();
        let e_ant = (0..m).filter(|&e| is_e_ant[e]).collect();
        AntipodalIndex {
            opposite_vertex,
            is_e_ant,
            e_ant,
        }
    }

    /// `opp(e)`; `None` for cut edges.
    pub fn opposite_vertex(&self, e: EdgeId) -> Option<VertexId> {
        self.opposite_vertex[e]
    }

    /// `opp(v, C)` for the cycle block `b`.
    pub fn opposite_edge(&self, d: &Decomposition, b: BlockId, v: VertexId) -> Option<EdgeId> {
        let block = &d.blocks[b];
        let h = half(block).ok()?;
        let &(_, pos) = d.blocks_of_vertex(v).iter().find(|(x, _)| *x == b)?;
        Some(block.edges[(pos + h) % block.len()])
    }

    /// Edges whose antipodal vertex is a cut vertex, ascending.
    pub fn e_ant(&self) -> &[EdgeId] {
        &self.e_ant
    }

    pub fn is_e_ant(&self, e: EdgeId) -> bool {
        self.is_e_ant[e]
    }
}

pub fn compute_e_ant(d: &Decomposition) -> Vec<EdgeId> {
    AntipodalIndex::new(d).e_ant
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SegmentClass {
    /// Bounded by a cut vertex on both sides.
    S1,
    /// Cut vertex before, `E_ant` edge after.
    S2,
    /// `E_ant` edge before, cut vertex after.
    S3,
    /// Bounded by an `E_ant` edge on both sides.
    S4,
}

impl SegmentClass {
    pub const ALL: [SegmentClass; 4] = [
        SegmentClass::S1,
        SegmentClass::S2,
        SegmentClass::S3,
        SegmentClass::S4,
    ];

    fn from_boundaries(before_is_vertex: bool, after_is_vertex: bool) -> Self {
        match (before_is_vertex, after_is_vertex) {
            (true, true) => SegmentClass::S1,
            (true, false) => SegmentClass::S2,
            (false, true) => SegmentClass::S3,
            (false, false) => SegmentClass::S4,
        }
    }

    /// Class of the element-wise antipodal image of a segment.
    pub fn antipodal(self) -> Self {
        match self {
            SegmentClass::S1 => SegmentClass::S4,
            SegmentClass::S2 => SegmentClass::S3,
            SegmentClass::S3 => SegmentClass::S2,
            SegmentClass::S4 => SegmentClass::S1,
        }
    }

    /// Class of the same segment read in the opposite direction.
    pub fn reversed(self) -> Self {
        match self {
            SegmentClass::S2 => SegmentClass::S3,
            SegmentClass::S3 => SegmentClass::S2,
            other => other,
        }
    }

    /// True for the classes whose edges are black in the canonical partition.
    pub fn is_black(self) -> bool {
        matches!(self, SegmentClass::S1 | SegmentClass::S2)
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// A maximal run of non-cut vertices and non-`E_ant` edges along a cycle's
/// closed trail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSegment {
    pub cycle: BlockId,
    pub elements: Vec<Element>,
    pub class: SegmentClass,
}

impl CycleSegment {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.elements.iter().filter_map(|x| match *x {
            Element::Vertex(v) => Some(v),
            Element::Edge(_) => None,
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.elements.iter().filter_map(|x| match *x {
            Element::Edge(e) => Some(e),
            Element::Vertex(_) => None,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SegmentCounts {
    pub s1: usize,
    pub s2: usize,
    pub s3: usize,
    pub s4: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SegmentCatalog {
    /// Segments grouped by cycle (block order), in trail order within each.
    pub segments: Vec<CycleSegment>,
    counts: [usize; 4],
}

impl SegmentCatalog {
    pub fn counts(&self) -> SegmentCounts {
        let [s1, s2, s3, s4] = self.counts;
        SegmentCounts { s1, s2, s3, s4 }
    }

    pub fn count(&self, class: SegmentClass) -> usize {
        self.counts[class.index()]
    }

    pub fn of_class(&self, class: SegmentClass) -> impl Iterator<Item = &CycleSegment> {
        self.segments.iter().filter(move |s| s.class == class)
    }

    pub fn in_cycle(&self, b: BlockId) -> impl Iterator<Item = &CycleSegment> {
        self.segments.iter().filter(move |s| s.cycle == b)
    }
}

/// How each cycle's closed trail is walked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrailOrder {
    /// Walk against the canonical cyclic order.
    pub reversed: bool,
    /// Start at the `start_rank`-th cut vertex of the cycle (ascending id,
    /// wrapping around).
    pub start_rank: usize,
}

pub fn enumerate_segments(d: &Decomposition, a: &AntipodalIndex) -> SegmentCatalog {
    enumerate_segments_with(d, a, TrailOrder::default())
}

pub fn enumerate_segments_with(
    d: &Decomposition,
    a: &AntipodalIndex,
    order: TrailOrder,
) -> SegmentCatalog {
    let mut segments = Vec::new();
    let mut counts = [0usize; 4];
    for (b, block) in d.cycles() {
        if half(block).is_err() {
            continue;
        }
        let mut cut_positions: Vec<(VertexId, usize)> = block
            .vertices
            .iter()
            .enumerate()
            .filter(|&(_, &v)| d.is_cut_vertex(v))
            .map(|(pos, &v)| (v, pos))
            .collect();
        if cut_positions.is_empty() {
            continue;
        }
        cut_positions.sort_unstable();
        let start = cut_positions[order.start_rank % cut_positions.len()].1;
        let n = block.len();
        let trail_element = |k: usize| -> Element {
            // k in 1..2n; k = 0 and k = 2n are the start vertex.
            if order.reversed {
                if k % 2 == 1 {
                    Element::Edge(block.edges[(start + n - 1 - (k - 1) / 2) % n])
                } else {
                    Element::Vertex(block.vertices[(start + n - k / 2) % n])
                }
            } else if k % 2 == 1 {
                Element::Edge(block.edges[(start + (k - 1) / 2) % n])
            } else {
                Element::Vertex(block.vertices[(start + k / 2) % n])
            }
        };
        let is_marked = |x: Element| match x {
            Element::Vertex(v) => d.is_cut_vertex(v),
            Element::Edge(e) => a.is_e_ant(e),
        };

        let mut before_is_vertex = true;
        let mut run: Vec<Element> = Vec::new();
        for k in 1..=2 * n {
            let x = if k == 2 * n {
                Element::Vertex(block.vertices[start])
            } else {
                trail_element(k)
            };
            if is_marked(x) {
                let after_is_vertex = matches!(x, Element::Vertex(_));
                if !run.is_empty() {
                    let class = SegmentClass::from_boundaries(before_is_vertex, after_is_vertex);
                    counts[class.index()] += 1;
                    segments.push(CycleSegment {
                        cycle: b,
                        elements: std::mem::take(&mut run),
                        class,
                    });
                }
                before_is_vertex = after_is_vertex;
            } else {
                run.push(x);
            }
        }
    }
    SegmentCatalog { segments, counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::fixtures::{self, e, v};
    use crate::graph::bfs_distances;

    #[test]
    fn triangle_and_five_cycle_antipodes() {
        let c3 = fixtures::cycle(3);
        let d = decompose(&c3);
        let block = &d.blocks[0];
        assert_eq!(antipodal_vertex(block, 0).unwrap(), 2);
        assert_eq!(antipodal_edge(block, 2).unwrap(), 0);

        let c5 = fixtures::cycle(5);
        let d = decompose(&c5);
        let block = &d.blocks[0];
        // e = v2v3 has id 1.
        let w = antipodal_vertex(block, 1).unwrap();
        assert_eq!(w, v(5));
        let dist = bfs_distances(&c5, w).unwrap().dist;
        assert_eq!(dist[v(2)], 2);
        assert_eq!(dist[v(3)], 2);
        assert_eq!(
            antipodal_vertex(block, 9),
            Err(SegmentError::EdgeNotInCycle(9))
        );
        assert_eq!(
            antipodal_edge(block, 9),
            Err(SegmentError::VertexNotInCycle(9))
        );
    }

    #[test]
    fn antipodes_agree_with_bfs() {
        for n in [3u64, 5, 7, 9, 11] {
            let g = fixtures::cycle(n);
            let d = decompose(&g);
            let block = &d.blocks[0];
            for &edge in &block.edges {
                let w = antipodal_vertex(block, edge).unwrap();
                let dist = bfs_distances(&g, w).unwrap().dist;
                let (a, b) = g.endpoints(edge);
                assert_eq!(dist[a], dist[b]);
                assert_eq!(antipodal_edge(block, w).unwrap(), edge);
            }
        }
    }

    #[test]
    fn non_cycle_blocks_have_no_antipode() {
        let g = fixtures::path(3);
        let d = decompose(&g);
        assert_eq!(
            antipodal_vertex(&d.blocks[0], 0),
            Err(SegmentError::NotOddCycle)
        );
        let idx = AntipodalIndex::new(&d);
        assert_eq!(idx.opposite_vertex(0), None);
        assert!(idx.e_ant().is_empty());
    }

    #[test]
    fn example_antipodes_and_e_ant() {
        let g = fixtures::example02();
        let d = decompose(&g);
        let c1 = &d.blocks[0];
        assert_eq!(antipodal_vertex(c1, e(7)).unwrap(), v(4));
        assert_eq!(antipodal_edge(c1, v(4)).unwrap(), e(7));
        let idx = AntipodalIndex::new(&d);
        assert_eq!(idx.e_ant(), &[e(2), e(7), e(12)]);
        assert_eq!(compute_e_ant(&d), vec![e(2), e(7), e(12)]);
        assert_eq!(idx.opposite_edge(&d, 0, v(5)), Some(e(1)));
        assert_eq!(idx.opposite_edge(&d, 4, v(11)), Some(e(13)));
        assert_eq!(idx.opposite_edge(&d, 4, v(5)), None);
    }

    #[test]
    fn bowtie_e_ant_is_one_edge_per_triangle() {
        let g = fixtures::bowtie();
        let d = decompose(&g);
        let idx = AntipodalIndex::new(&d);
        // Brute force: an edge is in E_ant iff the shared vertex is equidistant
        // from its endpoints within its triangle and the edge avoids it.
        let hub = g.vertex_of_label(1).unwrap();
        let dist = bfs_distances(&g, hub).unwrap().dist;
        let expected: Vec<EdgeId> = (0..g.edge_count())
            .filter(|&x| {
                let (a, b) = g.endpoints(x);
                a != hub && b != hub && dist[a] == dist[b]
            })
            .collect();
        assert_eq!(expected.len(), 2);
        assert_eq!(idx.e_ant(), expected.as_slice());
        let c7 = fixtures::cycle(7);
        assert!(compute_e_ant(&decompose(&c7)).is_empty());
    }

    fn render(seg: &CycleSegment) -> Vec<Element> {
        seg.elements.clone()
    }

    #[test]
    fn example_segments() {
        use Element::{Edge as E, Vertex as V};
        let g = fixtures::example02();
        let d = decompose(&g);
        let a = AntipodalIndex::new(&d);
        let cat = enumerate_segments(&d, &a);
        let classes: Vec<_> = cat.segments.iter().map(|s| s.class).collect();
        assert_eq!(
            classes,
            vec![
                SegmentClass::S1,
                SegmentClass::S2,
                SegmentClass::S4,
                SegmentClass::S3,
                SegmentClass::S2,
                SegmentClass::S3,
            ]
        );
        let segs: Vec<_> = cat.segments.iter().map(render).collect();
        assert_eq!(segs[0], vec![E(e(4)), V(v(5)), E(e(5))]);
        assert_eq!(segs[1], vec![E(e(6)), V(v(7))]);
        assert_eq!(segs[2], vec![V(v(1)), E(e(1)), V(v(2))]);
        assert_eq!(segs[3], vec![V(v(3)), E(e(3))]);
        assert_eq!(segs[4], vec![E(e(11)), V(v(11))]);
        assert_eq!(segs[5], vec![V(v(12)), E(e(13))]);
        assert_eq!(
            cat.counts(),
            SegmentCounts {
                s1: 1,
                s2: 2,
                s3: 2,
                s4: 1
            }
        );
    }

    #[test]
    fn bowtie_segments() {
        let g = fixtures::bowtie();
        let d = decompose(&g);
        let a = AntipodalIndex::new(&d);
        let cat = enumerate_segments(&d, &a);
        let counts = cat.counts();
        assert_eq!(
            counts,
            SegmentCounts {
                s1: 0,
                s2: 2,
                s3: 2,
                s4: 0
            }
        );
        for seg in cat.of_class(SegmentClass::S2) {
            assert!(matches!(
                seg.elements.as_slice(),
                [Element::Edge(_), Element::Vertex(_)]
            ));
        }
        for seg in cat.of_class(SegmentClass::S3) {
            assert!(matches!(
                seg.elements.as_slice(),
                [Element::Vertex(_), Element::Edge(_)]
            ));
        }
    }

    #[test]
    fn nine_cycle_segment_classes_in_trail_order() {
        let g = fixtures::nine_cycle_two_cuts();
        let d = decompose(&g);
        let a = AntipodalIndex::new(&d);
        let cat = enumerate_segments(&d, &a);
        let classes: Vec<_> = cat.segments.iter().map(|s| s.class).collect();
        assert_eq!(
            classes,
            vec![
                SegmentClass::S1,
                SegmentClass::S2,
                SegmentClass::S4,
                SegmentClass::S3
            ]
        );
        let edges: Vec<Vec<EdgeId>> = cat.segments.iter().map(|s| s.edges().collect()).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![2, 3], vec![5], vec![7, 8]]);
    }

    #[test]
    fn reversed_trail_swaps_s2_and_s3() {
        let g = fixtures::example02();
        let d = decompose(&g);
        let a = AntipodalIndex::new(&d);
        let fwd = enumerate_segments(&d, &a);
        let rev = enumerate_segments_with(
            &d,
            &a,
            TrailOrder {
                reversed: true,
                start_rank: 1,
            },
        );
        let key = |s: &CycleSegment, flip: bool| {
            let mut vs: Vec<_> = s.vertices().collect();
            let mut es: Vec<_> = s.edges().collect();
            vs.sort_unstable();
            es.sort_unstable();
            (
                s.cycle,
                vs,
                es,
                if flip { s.class.reversed() } else { s.class },
            )
        };
        let mut a_keys: Vec<_> = fwd.segments.iter().map(|s| key(s, false)).collect();
        let mut b_keys: Vec<_> = rev.segments.iter().map(|s| key(s, true)).collect();
        a_keys.sort();
        b_keys.sort();
        assert_eq!(a_keys, b_keys);
    }

    #[test]
    fn odd_cycle_alone_has_no_segments() {
        let g = fixtures::cycle(9);
        let d = decompose(&g);
        let a = AntipodalIndex::new(&d);
        assert!(enumerate_segments(&d, &a).segments.is_empty());
    }
}
