//! The closed-form strong rainbow connection number and the optimal
//! coloring construction for odd cacti.

mod registry;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use registry::{
    BruteForce, CopyRoute, FormulaOnly, RegistryError, SegmentColoring, Solution, Solver,
    SolverRegistry,
};

use crate::analysis::Analysis;
use crate::antipodal::{AntipodalIndex, Element, SegmentClass};
use crate::coloring::{ColoringError, EdgeColoring};
use crate::decomposition::{BctNode, Classification, Decomposition, Rejection};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::oracle::OracleError;
use crate::partition::{BlackWhitePartition, PartitionError, Shade};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not an odd cactus: {0:?}")]
    NotOddCactus(Rejection),
    #[error("edge {0} is not antipodal to a cut vertex")]
    NotAntipodalEdge(EdgeId),
    #[error("no black edge on the far side of the separation at edge {0}")]
    NoBlackEdgeInSeparation(EdgeId),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SrcCase {
    Formula,
    OddCycle,
    Triangle,
    Tree,
}

/// The quantities the closed form is evaluated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaStats {
    pub m: usize,
    pub cut_edges: usize,
    pub s1_count: usize,
    pub e_ant: usize,
}

impl FormulaStats {
    pub fn of(an: &Analysis) -> Self {
        FormulaStats {
            m: an.graph.edge_count(),
            cut_edges: an.decomposition.cut_edges.len(),
            s1_count: an.segments.count(SegmentClass::S1),
            e_ant: an.antipodes.e_ant().len(),
        }
    }

    /// `m + |E_cut| + |S1| - |E_ant|`.
    pub fn numerator(&self) -> usize {
        self.m + self.cut_edges + self.s1_count - self.e_ant
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrcResult {
    pub src: usize,
    pub coloring: EdgeColoring,
    pub stats: FormulaStats,
    pub case: SrcCase,
}

fn require_odd_cactus(an: &Analysis) -> Result<SrcCase, SolveError> {
    match an.classification {
        Classification::Rejected(r) => Err(SolveError::NotOddCactus(r)),
        Classification::Tree => Ok(SrcCase::Tree),
        Classification::OddCycle(3) => Ok(SrcCase::Triangle),
        Classification::OddCycle(_) => Ok(SrcCase::OddCycle),
        Classification::GeneralOddCactus => Ok(SrcCase::Formula),
    }
}

/// Strong rainbow connection number from the closed form.
pub fn src_formula(an: &Analysis) -> Result<usize, SolveError> {
    match (require_odd_cactus(an)?, an.classification) {
        (SrcCase::Triangle, _) => Ok(1),
        (SrcCase::OddCycle, Classification::OddCycle(n)) => Ok((n + 1) / 2),
        _ => {
            let stats = FormulaStats::of(an);
            let numerator = stats.numerator();
            assert!(
                numerator % 2 == 0,
                "odd numerator {numerator} from {stats:?}"
            );
            Ok(numerator / 2)
        }
    }
}

/// Split at the cut vertex antipodal to `e`: the side containing `e` and
/// everything else, sharing only the pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub pivot_edge: EdgeId,
    pub pivot_vertex: VertexId,
    /// Ascending.
    pub g1_edges: Vec<EdgeId>,
    /// Ascending.
    pub g2_edges: Vec<EdgeId>,
}

pub fn separate(g: &Graph, a: &AntipodalIndex, e: EdgeId) -> Result<Separation, SolveError> {
    if e >= g.edge_count() || !a.is_e_ant(e) {
        return Err(SolveError::NotAntipodalEdge(e));
    }
    let pivot = a.opposite_vertex(e).expect("E_ant edges lie on cycles");
    let (start, _) = g.endpoints(e);
    let mut near = vec![false; g.vertex_count()];
    near[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &(y, _) in g.neighbors(x) {
            if y != pivot && !near[y] {
                near[y] = true;
                queue.push_back(y);
            }
        }
    }
    let (g1_edges, g2_edges) = (0..g.edge_count()).partition(|&x| {
        let (u, v) = g.endpoints(x);
        near[u] || near[v]
    });
    Ok(Separation {
        pivot_edge: e,
        pivot_vertex: pivot,
        g1_edges,
        g2_edges,
    })
}

/// The edge whose color an `E_ant` edge copies: the lowest-id black edge
/// on the far side of its separation.
pub fn assert_copy_choice(sep: &Separation, p: &BlackWhitePartition) -> Result<EdgeId, SolveError> {
    sep.g2_edges
        .iter()
        .copied()
        .find(|&x| p.edge(x) == Shade::Black)
        .ok_or(SolveError::NoBlackEdgeInSeparation(sep.pivot_edge))
}

/// Lowest black edge id on the far side of any separation, answered from
/// subtree minima over a rooted block-cut tree instead of a traversal per
/// query.
struct FarSideIndex {
    parent: Vec<Option<usize>>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    subtree_min: Vec<EdgeId>,
    prefix_min: Vec<EdgeId>,
    suffix_min: Vec<EdgeId>,
}

impl FarSideIndex {
    fn new(d: &Decomposition, p: &BlackWhitePartition) -> Self {
        let bct = &d.bct;
        let n = bct.node_count();
        let value: Vec<EdgeId> = (0..n)
            .map(|x| match bct.node(x) {
                BctNode::Block(b) => d.blocks[b]
                    .edges
                    .iter()
                    .copied()
                    .filter(|&e| p.edge(e) == Shade::Black)
                    .min()
                    .unwrap_or(EdgeId::MAX),
                BctNode::CutVertex(_) => EdgeId::MAX,
            })
            .collect();

        let mut parent = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in bct.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    stack.push(y);
                }
            }
        }
        // Pre-order from a stack visits each subtree contiguously.
        let mut tin = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            tin[x] = i;
        }
        let mut size = vec![1usize; n];
        let mut subtree_min = value.clone();
        for &x in order.iter().rev() {
            if let Some(px) = parent[x] {
                size[px] += size[x];
                subtree_min[px] = subtree_min[px].min(subtree_min[x]);
            }
        }
        let tout: Vec<usize> = (0..n).map(|x| tin[x] + size[x]).collect();
        let mut prefix_min = vec![EdgeId::MAX; n + 1];
        for i in 0..n {
            prefix_min[i + 1] = prefix_min[i].min(value[order[i]]);
        }
        let mut suffix_min = vec![EdgeId::MAX; n + 1];
        for i in (0..n).rev() {
            suffix_min[i] = suffix_min[i + 1].min(value[order[i]]);
        }
        FarSideIndex {
            parent,
            tin,
            tout,
            subtree_min,
            prefix_min,
            suffix_min,
        }
    }

    fn lowest_black(&self, cycle_node: usize, pivot_node: usize) -> Option<EdgeId> {
        let best = if self.parent[pivot_node] == Some(cycle_node) {
            self.subtree_min[pivot_node]
        } else {
            debug_assert_eq!(self.parent[cycle_node], Some(pivot_node));
            self.prefix_min[self.tin[cycle_node]].min(self.suffix_min[self.tout[cycle_node]])
        };
        (best != EdgeId::MAX).then_some(best)
    }
}

fn tree_coloring(m: usize) -> Vec<u32> {
    (1..=m as u32).collect()
}

/// Color at cyclic position `i` (0-based) is `i mod (n+1)/2 + 1`; `C_3`
/// uses one color.
fn odd_cycle_coloring(an: &Analysis, n: usize) -> Vec<u32> {
    let mut colors = vec![0; an.graph.edge_count()];
    let block = &an.decomposition.blocks[0];
    let period = if n == 3 { 1 } else { (n + 1) / 2 };
    for (i, &e) in block.edges.iter().enumerate() {
        colors[e] = (i % period) as u32 + 1;
    }
    colors
}

fn segment_coloring(an: &Analysis, route: CopyRoute) -> Result<Vec<u32>, SolveError> {
    let g = &an.graph;
    let d = &an.decomposition;
    let a = &an.antipodes;
    let partition = an.canonical_partition()?;
    let mut colors = vec![0u32; g.edge_count()];
    let mut color = 0u32;

    for &e in &d.cut_edges {
        color += 1;
        colors[e] = color;
    }
    for class in [SegmentClass::S1, SegmentClass::S2] {
        for seg in an.segments.of_class(class) {
            for &x in &seg.elements {
                match x {
                    Element::Edge(e) => {
                        color += 1;
                        colors[e] = color;
                    }
                    Element::Vertex(v) => {
                        let opposite = a
                            .opposite_edge(d, seg.cycle, v)
                            .ok_or_else(|| SolveError::Internal(format!("no antipode for {v}")))?;
                        colors[opposite] = color;
                    }
                }
            }
        }
    }

    let far_side = match route {
        CopyRoute::Indexed => Some(FarSideIndex::new(d, &partition)),
        CopyRoute::Separation => None,
    };
    for &e in a.e_ant() {
        let source = match &far_side {
            Some(index) => {
                let pivot = a.opposite_vertex(e).expect("E_ant edge on a cycle");
                let pivot_node = d
                    .bct
                    .cut_vertex_node(pivot)
                    .ok_or_else(|| SolveError::Internal(format!("{pivot} is not a cut node")))?;
                let cycle_node = d.bct.block_node(d.block_of_edge(e));
                index
                    .lowest_black(cycle_node, pivot_node)
                    .ok_or(SolveError::NoBlackEdgeInSeparation(e))?
            }
            None => assert_copy_choice(&separate(g, a, e)?, &partition)?,
        };
        colors[e] = colors[source];
    }
    if color as usize != partition.black_edge_count() {
        return Err(SolveError::Internal(format!(
            "used {color} colors for {} black edges",
            partition.black_edge_count()
        )));
    }
    Ok(colors)
}

pub fn strong_rainbow_coloring(an: &Analysis) -> Result<SrcResult, SolveError> {
    strong_rainbow_coloring_with(an, CopyRoute::Indexed)
}

pub fn strong_rainbow_coloring_with(
    an: &Analysis,
    route: CopyRoute,
) -> Result<SrcResult, SolveError> {
    let case = require_odd_cactus(an)?;
    let colors = match (case, an.classification) {
        (SrcCase::Tree, _) => tree_coloring(an.graph.edge_count()),
        (_, Classification::OddCycle(n)) => odd_cycle_coloring(an, n),
        _ => segment_coloring(an, route)?,
    };
    let coloring = EdgeColoring::from_colors(colors)?;
    Ok(SrcResult {
        src: coloring.k() as usize,
        coloring,
        stats: FormulaStats::of(an),
        case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, e, v};
    use crate::graph::build_graph;
    use crate::oracle::verify_strong_rainbow;

    #[test]
    fn formula_on_named_graphs() {
        let ex = Analysis::new(fixtures::example02());
        assert_eq!(
            FormulaStats::of(&ex),
            FormulaStats {
                m: 13,
                cut_edges: 3,
                s1_count: 1,
                e_ant: 3
            }
        );
        assert_eq!(src_formula(&ex), Ok(7));
        assert_eq!(src_formula(&Analysis::new(fixtures::cycle(5))), Ok(3));
        assert_eq!(src_formula(&Analysis::new(fixtures::cycle(3))), Ok(1));
        assert_eq!(src_formula(&Analysis::new(fixtures::bowtie())), Ok(2));
        assert_eq!(src_formula(&Analysis::new(fixtures::path(5))), Ok(4));
        assert!(matches!(
            src_formula(&Analysis::new(fixtures::cycle(4))),
            Err(SolveError::NotOddCactus(_))
        ));
    }

    #[test]
    fn example_coloring_follows_worked_steps() {
        let an = Analysis::new(fixtures::example02());
        let res = strong_rainbow_coloring(&an).unwrap();
        assert_eq!(res.src, 7);
        assert_eq!(res.case, SrcCase::Formula);
        let c = |i| res.coloring.color(e(i));
        assert_eq!((c(8), c(9), c(10)), (1, 2, 3));
        assert_eq!((c(4), c(1), c(5)), (4, 4, 5));
        assert_eq!((c(6), c(3)), (6, 6));
        assert_eq!((c(11), c(13)), (7, 7));
        assert_eq!(c(2), 1);
        assert!([2, 3, 7].contains(&c(7)));
        assert!([2, 3, 4, 5, 6].contains(&c(12)));
        assert_eq!(c(7), 2);
        assert_eq!(c(12), 4);
        assert!(
            verify_strong_rainbow(&an.graph, &res.coloring, true)
                .unwrap()
                .ok
        );
    }

    #[test]
    fn odd_cycle_and_tree_cases() {
        let c5 = Analysis::new(fixtures::cycle(5));
        let res = strong_rainbow_coloring(&c5).unwrap();
        assert_eq!(res.coloring.colors(), &[1, 2, 3, 1, 2]);
        assert_eq!(res.case, SrcCase::OddCycle);

        let c3 = Analysis::new(fixtures::cycle(3));
        let res = strong_rainbow_coloring(&c3).unwrap();
        assert_eq!(res.coloring.colors(), &[1, 1, 1]);
        assert_eq!(res.case, SrcCase::Triangle);

        let k2 = Analysis::new(build_graph(&[(0, 1)]).unwrap());
        let res = strong_rainbow_coloring(&k2).unwrap();
        assert_eq!(res.src, 1);
        assert_eq!(res.case, SrcCase::Tree);
    }

    #[test]
    fn separation_of_example() {
        let an = Analysis::new(fixtures::example02());
        let sep = separate(&an.graph, &an.antipodes, e(12)).unwrap();
        assert_eq!(sep.pivot_vertex, v(10));
        assert_eq!(sep.g1_edges, vec![e(11), e(12), e(13)]);
        assert_eq!(sep.g2_edges.len(), 10);
        assert_eq!(
            separate(&an.graph, &an.antipodes, e(4)),
            Err(SolveError::NotAntipodalEdge(e(4)))
        );
    }

    #[test]
    fn copy_choices_of_example() {
        let an = Analysis::new(fixtures::example02());
        let p = an.canonical_partition().unwrap();
        let pick =
            |x| assert_copy_choice(&separate(&an.graph, &an.antipodes, x).unwrap(), &p).unwrap();
        assert_eq!(pick(e(2)), e(8));
        assert_eq!(pick(e(7)), e(9));
        assert_eq!(pick(e(12)), e(4));
    }

    #[test]
    fn bowtie_separation_and_choice() {
        let an = Analysis::new(fixtures::bowtie());
        let p = an.canonical_partition().unwrap();
        let first = an.antipodes.e_ant()[0];
        let sep = separate(&an.graph, &an.antipodes, first).unwrap();
        // Triangle B is edges 3..6.
        assert_eq!(sep.g2_edges, vec![3, 4, 5]);
        let chosen = assert_copy_choice(&sep, &p).unwrap();
        assert_eq!(p.edge(chosen), Shade::Black);
        assert!(sep.g2_edges.contains(&chosen));
        assert_eq!(
            p.black_edges().filter(|x| sep.g2_edges.contains(x)).count(),
            1
        );
    }

    #[test]
    fn both_copy_routes_agree_on_example() {
        let an = Analysis::new(fixtures::example02());
        let fast = strong_rainbow_coloring_with(&an, CopyRoute::Indexed).unwrap();
        let slow = strong_rainbow_coloring_with(&an, CopyRoute::Separation).unwrap();
        assert_eq!(fast, slow);
    }
}
