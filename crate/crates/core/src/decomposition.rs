//! Biconnected decomposition: cut vertices, blocks, cut edges and the
//! block-cut tree, plus odd-cactus classification.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph, VertexId};

pub type BlockId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    /// A bridge together with its two endpoints.
    CutEdge,
    /// A 2-connected block with as many edges as vertices.
    Cycle,
    /// A 2-connected block that is not a cycle; never present in a cactus.
    Other,
}

/// One block of the graph.
///
/// For cycles, `vertices` is the canonical cyclic traversal (start at the
/// lowest vertex id, step toward its lower-id neighbour) and `edges[i]` joins
/// `vertices[i]` with `vertices[(i + 1) % len]`. Cut-edge blocks list their
/// endpoints in ascending order; `Other` blocks list vertices and edges
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == BlockKind::Cycle
    }

    pub fn position_of_vertex(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn position_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BctNode {
    Block(BlockId),
    CutVertex(VertexId),
}

/// Block-cut tree. Node indices `0..blocks` are blocks; the remaining
/// indices are cut vertices in ascending vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    nodes: Vec<BctNode>,
    adjacency: Vec<Vec<usize>>,
    cut_index: HashMap<VertexId, usize>,
}

impl BlockCutTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn node(&self, idx: usize) -> BctNode {
        self.nodes[idx]
    }

    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adjacency[idx]
    }

    pub fn block_node(&self, b: BlockId) -> usize {
        b
    }

    pub fn cut_vertex_node(&self, v: VertexId) -> Option<usize> {
        self.cut_index.get(&v).copied()
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.adjacency[idx].len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Blocks in DFS discovery order.
    pub blocks: Vec<Block>,
    /// Cut vertices, ascending.
    pub cut_vertices: Vec<VertexId>,
    /// Cut edges (bridges), ascending.
    pub cut_edges: Vec<EdgeId>,
    pub bct: BlockCutTree,
    is_cut_vertex: Vec<bool>,
    block_of_edge: Vec<BlockId>,
    vertex_blocks: Vec<Vec<(BlockId, usize)>>,
}

impl Decomposition {
    pub fn vertex_count(&self) -> usize {
        self.is_cut_vertex.len()
    }

    pub fn edge_count(&self) -> usize {
        self.block_of_edge.len()
    }

    pub fn is_cut_vertex(&self, v: VertexId) -> bool {
        self.is_cut_vertex[v]
    }

    pub fn is_cut_edge(&self, e: EdgeId) -> bool {
        self.blocks[self.block_of_edge[e]].kind == BlockKind::CutEdge
    }

    pub fn block_of_edge(&self, e: EdgeId) -> BlockId {
        self.block_of_edge[e]
    }

    /// Blocks containing `v`, each with the position of `v` in that block's
    /// vertex list.
    pub fn blocks_of_vertex(&self, v: VertexId) -> &[(BlockId, usize)] {
        &self.vertex_blocks[v]
    }

    pub fn cycles(&self) -> impl Iterator<Item = (BlockId, &Block)> {
        self.blocks.iter().enumerate().filter(|(_, b)| b.is_cycle())
    }

    pub fn cut_vertices_of(&self, b: BlockId) -> impl Iterator<Item = VertexId> + '_ {
        self.blocks[b]
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.is_cut_vertex[v])
    }
}

struct Frame {
    vertex: VertexId,
    parent_edge: Option<EdgeId>,
    next: usize,
}

/// Tarjan's biconnected components, iteratively.
pub fn decompose(g: &Graph) -> Decomposition {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut pushed_at = vec![usize::MAX; m];
    let mut push_counter = 0usize;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    // (discovery key, edges)
    let mut raw_blocks: Vec<(usize, Vec<EdgeId>)> = Vec::new();

    let mut time = 0usize;
    disc[0] = time;
    low[0] = time;
    time += 1;
    let mut stack = vec![Frame {
        vertex: 0,
        parent_edge: None,
        next: 0,
    }];
    while let Some(top) = stack.last_mut() {
        let v = top.vertex;
        if top.next < g.degree(v) {
            let (w, e) = g.neighbors(v)[top.next];
            top.next += 1;
            if Some(e) == top.parent_edge {
                continue;
            }
            if disc[w] == usize::MAX {
                pushed_at[e] = push_counter;
                push_counter += 1;
                edge_stack.push(e);
                disc[w] = time;
                low[w] = time;
                time += 1;
                stack.push(Frame {
                    vertex: w,
                    parent_edge: Some(e),
                    next: 0,
                });
            } else if disc[w] < disc[v] {
                pushed_at[e] = push_counter;
                push_counter += 1;
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            let finished = stack.pop().expect("non-empty");
            if let (Some(parent), Some(pe)) = (stack.last(), finished.parent_edge) {
                let p = parent.vertex;
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut edges = Vec::new();
                    while let Some(x) = edge_stack.pop() {
                        edges.push(x);
                        if x == pe {
                            break;
                        }
                    }
                    raw_blocks.push((pushed_at[pe], edges));
                }
            }
        }
    }
    raw_blocks.sort_by_key(|(key, _)| *key);

    let blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|(_, edges)| shape_block(g, edges))
        .collect();

    let mut block_of_edge = vec![0; m];
    let mut vertex_blocks: Vec<Vec<(BlockId, usize)>> = vec![Vec::new(); n];
    for (b, block) in blocks.iter().enumerate() {
        for &e in &block.edges {
            block_of_edge[e] = b;
        }
        for (pos, &v) in block.vertices.iter().enumerate() {
            vertex_blocks[v].push((b, pos));
        }
    }
    let is_cut_vertex: Vec<bool> = vertex_blocks.iter().map(|bs| bs.len() >= 2).collect();
    let cut_vertices: Vec<VertexId> = (0..n).filter(|&v| is_cut_vertex[v]).collect();
    let cut_edges: Vec<EdgeId> = (0..m)
        .filter(|&e| blocks[block_of_edge[e]].kind == BlockKind::CutEdge)
        .collect();

    let mut nodes: Vec<BctNode> = (0..blocks.len()).map(BctNode::Block).collect();
    let mut cut_index = HashMap::with_capacity(cut_vertices.len());
    for &v in &cut_vertices {
        cut_index.insert(v, nodes.len());
        nodes.push(BctNode::CutVertex(v));
    }
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &v in &cut_vertices {
        let cv = cut_index[&v];
        for &(b, _) in &vertex_blocks[v] {
            adjacency[b].push(cv);
            adjacency[cv].push(b);
        }
    }

    Decomposition {
        blocks,
        cut_vertices,
        cut_edges,
        bct: BlockCutTree {
            nodes,
            adjacency,
            cut_index,
        },
        is_cut_vertex,
        block_of_edge,
        vertex_blocks,
    }
}

fn shape_block(g: &Graph, mut edges: Vec<EdgeId>) -> Block {
    if edges.len() == 1 {
        let (u, v) = g.endpoints(edges[0]);
        return Block {
            kind: BlockKind::CutEdge,
            vertices: vec![u.min(v), u.max(v)],
            edges,
        };
    }
    let mut local: HashMap<VertexId, Vec<(VertexId, EdgeId)>> = HashMap::new();
    for &e in &edges {
        let (u, v) = g.endpoints(e);
        local.entry(u).or_default().push((v, e));
        local.entry(v).or_default().push((u, e));
    }
    if local.len() != edges.len() {
        let mut vertices: Vec<VertexId> = local.into_keys().collect();
        vertices.sort_unstable();
        edges.sort_unstable();
        return Block {
            kind: BlockKind::Other,
            vertices,
            edges,
        };
    }
    // 2-connected with |E| = |V|: every vertex has exactly two block neighbours.
    let start = *local.keys().min().expect("non-empty block");
    let &(first, first_edge) = local[&start]
        .iter()
        .min_by_key(|(w, _)| *w)
        .expect("degree two");
    let mut vertices = vec![start];
    let mut order = vec![first_edge];
    let (mut prev_edge, mut cur) = (first_edge, first);
    while cur != start {
        vertices.push(cur);
        let &(next, e) = local[&cur]
            .iter()
            .find(|&&(_, e)| e != prev_edge)
            .expect("degree two");
        order.push(e);
        prev_edge = e;
        cur = next;
    }
    Block {
        kind: BlockKind::Cycle,
        vertices,
        edges: order,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Rejection {
    ContainsEvenCycle { block: BlockId, length: usize },
    NotCactus { block: BlockId, edge: EdgeId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Tree,
    OddCycle(usize),
    GeneralOddCactus,
    Rejected(Rejection),
}

impl Classification {
    pub fn is_odd_cactus(&self) -> bool {
        !matches!(self, Classification::Rejected(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Tree => "Tree",
            Classification::OddCycle(_) => "OddCycle",
            Classification::GeneralOddCactus => "GeneralOddCactus",
            Classification::Rejected(_) => "Rejected",
        }
    }
}

pub fn classify(_g: &Graph, d: &Decomposition) -> Classification {
    for (b, block) in d.blocks.iter().enumerate() {
        match block.kind {
            BlockKind::Other => {
                return Classification::Rejected(Rejection::NotCactus {
                    block: b,
                    edge: block.edges[0],
                })
            }
            BlockKind::Cycle if block.len() % 2 == 0 => {
                return Classification::Rejected(Rejection::ContainsEvenCycle {
                    block: b,
                    length: block.len(),
                })
            }
            _ => {}
        }
    }
    if d.blocks.iter().all(|b| b.kind == BlockKind::CutEdge) {
        Classification::Tree
    } else if d.blocks.len() == 1 {
        Classification::OddCycle(d.blocks[0].len())
    } else {
        Classification::GeneralOddCactus
    }
}

/// Blocks whose block-cut tree node has degree at most one.
pub fn leaf_blocks(d: &Decomposition) -> Vec<BlockId> {
    (0..d.blocks.len())
        .filter(|&b| d.bct.degree(d.bct.block_node(b)) <= 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::build_graph;

    #[test]
    fn path_has_one_cut_vertex() {
        let g = build_graph(&[(0, 1), (1, 2)]).unwrap();
        let d = decompose(&g);
        assert_eq!(d.cut_vertices, vec![1]);
        assert_eq!(d.blocks.len(), 2);
        assert!(d.blocks.iter().all(|b| b.kind == BlockKind::CutEdge));
        assert_eq!(classify(&g, &d), Classification::Tree);
        assert_eq!(leaf_blocks(&d), vec![0, 1]);
    }

    #[test]
    fn five_cycle_is_one_block() {
        let g = fixtures::cycle(5);
        let d = decompose(&g);
        assert!(d.cut_vertices.is_empty());
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].kind, BlockKind::Cycle);
        assert_eq!(d.blocks[0].vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(classify(&g, &d), Classification::OddCycle(5));
        assert_eq!(leaf_blocks(&d), vec![0]);
        assert_eq!(d.bct.node_count(), 1);
    }

    #[test]
    fn canonical_cycle_order_steps_to_lower_neighbour() {
        // 7-cycle listed in a scrambled orientation.
        let g = build_graph(&[(3, 1), (4, 3), (0, 2), (5, 4), (2, 6), (6, 5), (1, 0)]).unwrap();
        let d = decompose(&g);
        let c = &d.blocks[0];
        assert_eq!(c.vertices, vec![0, 1, 3, 4, 5, 6, 2]);
        for (i, &e) in c.edges.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            let (x, y) = (c.vertices[i], c.vertices[(i + 1) % c.len()]);
            assert!((a, b) == (x, y) || (a, b) == (y, x));
        }
    }

    #[test]
    fn example_graph_blocks() {
        let g = fixtures::example02();
        let d = decompose(&g);
        let v = fixtures::v;
        let e = fixtures::e;
        // v9 joins the bridges e9 and e10, so it is a cut vertex as well.
        assert_eq!(d.cut_vertices, vec![v(4), v(6), v(9), v(10)]);
        assert_eq!(d.cut_edges, vec![e(8), e(9), e(10)]);
        assert_eq!(d.blocks.len(), 5);
        let c1 = &d.blocks[0];
        assert_eq!(c1.kind, BlockKind::Cycle);
        assert_eq!(c1.vertices, (1..=7).map(v).collect::<Vec<_>>());
        assert_eq!(c1.edges, (1..=7).map(e).collect::<Vec<_>>());
        let kinds: Vec<_> = d.blocks.iter().map(|b| (b.kind, b.len())).collect();
        assert_eq!(
            kinds,
            vec![
                (BlockKind::Cycle, 7),
                (BlockKind::CutEdge, 1),
                (BlockKind::CutEdge, 1),
                (BlockKind::CutEdge, 1),
                (BlockKind::Cycle, 3),
            ]
        );
        assert_eq!(d.blocks[1].edges, vec![e(8)]);
        assert_eq!(d.blocks[4].vertices, vec![v(10), v(11), v(12)]);
        assert_eq!(classify(&g, &d), Classification::GeneralOddCactus);
        assert_eq!(leaf_blocks(&d), vec![1, 4]);
    }

    #[test]
    fn rejections_carry_witnesses() {
        let c4 = fixtures::cycle(4);
        let d = decompose(&c4);
        assert_eq!(
            classify(&c4, &d),
            Classification::Rejected(Rejection::ContainsEvenCycle {
                block: 0,
                length: 4
            })
        );
        let k4 = build_graph(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let d = decompose(&k4);
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].kind, BlockKind::Other);
        assert!(matches!(
            classify(&k4, &d),
            Classification::Rejected(Rejection::NotCactus { block: 0, .. })
        ));
    }

    #[test]
    fn bct_counts() {
        let g = fixtures::example02();
        let d = decompose(&g);
        assert_eq!(d.bct.node_count(), d.blocks.len() + d.cut_vertices.len());
        let expected: usize = (0..d.blocks.len())
            .map(|b| d.cut_vertices_of(b).count())
            .sum();
        assert_eq!(d.bct.edge_count(), expected);
        assert_eq!(d.bct.edge_count() + 1, d.bct.node_count());
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let pairs: Vec<_> = (0..200_000u64).map(|i| (i, i + 1)).collect();
        let g = build_graph(&pairs).unwrap();
        let d = decompose(&g);
        assert_eq!(d.cut_edges.len(), 200_000);
        assert_eq!(d.cut_vertices.len(), 199_999);
    }
}
