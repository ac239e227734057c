//! Independent checks: strong rainbow verification of a coloring and an
//! exhaustive search for the strong rainbow connection number of tiny
//! graphs. Nothing here relies on the cactus structure.

use std::collections::HashSet;

use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::decomposition::decompose;
use crate::graph::{
    all_shortest_paths, EdgeId, Graph, GraphError, Path, ShortestPathTree, VertexId,
};
use crate::partition::BlackWhitePartition;

pub const DEFAULT_MAX_EDGES: usize = 9;

/// Edge masks are `u64`.
const HARD_EDGE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("coloring covers {got} edges but the graph has {expected}")]
    PartialColoring { expected: usize, got: usize },
    #[error("brute force limited to {max} edges, graph has {m}")]
    TooLarge { m: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowWitness {
    pub u: VertexId,
    pub v: VertexId,
    pub path: Path,
    pub repeated_color: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationOutcome {
    pub ok: bool,
    pub witness: Option<RainbowWitness>,
}

impl VerificationOutcome {
    fn pass() -> Self {
        VerificationOutcome {
            ok: true,
            witness: None,
        }
    }

    fn fail(witness: RainbowWitness) -> Self {
        VerificationOutcome {
            ok: false,
            witness: Some(witness),
        }
    }
}

fn repeated_color(colors: &[u32], edges: &[EdgeId]) -> Option<u32> {
    let mut seen = HashSet::with_capacity(edges.len());
    edges.iter().map(|&e| colors[e]).find(|&c| !seen.insert(c))
}

fn check_total(g: &Graph, c: &EdgeColoring) -> Result<(), OracleError> {
    if c.len() != g.edge_count() {
        return Err(OracleError::PartialColoring {
            expected: g.edge_count(),
            got: c.len(),
        });
    }
    Ok(())
}

/// Checks that every vertex pair is joined by a rainbow shortest path.
///
/// With `geodetic_hint`, only the BFS-tree path per pair is examined, which
/// is exact on geodetic graphs. Without it every shortest path is
/// enumerated, so only small graphs are practical.
pub fn verify_strong_rainbow(
    g: &Graph,
    c: &EdgeColoring,
    geodetic_hint: bool,
) -> Result<VerificationOutcome, OracleError> {
    check_total(g, c)?;
    if geodetic_hint {
        verify_geodetic(g, c)
    } else {
        Ok(ShortestPathTable::new(g)?
            .first_failure(c.colors())
            .map_or_else(VerificationOutcome::pass, VerificationOutcome::fail))
    }
}

fn verify_geodetic(g: &Graph, c: &EdgeColoring) -> Result<VerificationOutcome, OracleError> {
    let n = g.vertex_count();
    let colors = c.colors();
    let mut count = vec![0u32; c.k() as usize + 1];
    for s in 0..n {
        let tree = ShortestPathTree::new(g, s)?;
        let mut children: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for t in 0..n {
            if let Some((p, e)) = tree.parent(t) {
                children[p].push((t, e));
            }
        }
        // Walk the tree keeping color multiplicities along the root path.
        let mut duplicates = 0usize;
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(s, None, 0)];
        while let Some(&(x, via, next)) = stack.last() {
            if let Some(&(y, e)) = children[x].get(next) {
                stack.last_mut().expect("non-empty").2 += 1;
                let col = colors[e] as usize;
                count[col] += 1;
                if count[col] == 2 {
                    duplicates += 1;
                }
                if duplicates > 0 && y > s {
                    let path = tree.path_to(g, y)?;
                    let repeated = repeated_color(colors, &path.edges).expect("duplicate on path");
                    return Ok(VerificationOutcome::fail(RainbowWitness {
                        u: s,
                        v: y,
                        path,
                        repeated_color: repeated,
                    }));
                }
                stack.push((y, Some(e), 0));
            } else {
                stack.pop();
                if let Some(e) = via {
                    let col = colors[e] as usize;
                    if count[col] == 2 {
                        duplicates -= 1;
                    }
                    count[col] -= 1;
                }
            }
        }
    }
    Ok(VerificationOutcome::pass())
}

/// Geodetic verification restricted to the given vertex pairs.
pub fn verify_pairs(
    g: &Graph,
    c: &EdgeColoring,
    pairs: &[(VertexId, VertexId)],
) -> Result<VerificationOutcome, OracleError> {
    check_total(g, c)?;
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    let mut tree: Option<ShortestPathTree> = None;
    for (u, v) in sorted {
        if tree.as_ref().map(|t| t.source()) != Some(u) {
            tree = Some(ShortestPathTree::new(g, u)?);
        }
        let path = tree.as_ref().expect("built above").path_to(g, v)?;
        if let Some(repeated) = repeated_color(c.colors(), &path.edges) {
            return Ok(VerificationOutcome::fail(RainbowWitness {
                u,
                v,
                path,
                repeated_color: repeated,
            }));
        }
    }
    Ok(VerificationOutcome::pass())
}

/// Every shortest path of every unordered vertex pair, as edge masks.
struct ShortestPathTable {
    pairs: Vec<(VertexId, VertexId, Vec<Path>)>,
}

impl ShortestPathTable {
    fn new(g: &Graph) -> Result<Self, OracleError> {
        let n = g.vertex_count();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let paths = all_shortest_paths(g, u, v)?;
                if paths[0].len() >= 2 {
                    pairs.push((u, v, paths));
                }
            }
        }
        Ok(ShortestPathTable { pairs })
    }

    fn first_failure(&self, colors: &[u32]) -> Option<RainbowWitness> {
        for (u, v, paths) in &self.pairs {
            if paths
                .iter()
                .all(|p| repeated_color(colors, &p.edges).is_some())
            {
                let path = paths[0].clone();
                let repeated = repeated_color(colors, &path.edges).expect("not rainbow");
                return Some(RainbowWitness {
                    u: *u,
                    v: *v,
                    path,
                    repeated_color: repeated,
                });
            }
        }
        None
    }

    fn masks(&self) -> Vec<Vec<u64>> {
        self.pairs
            .iter()
            .map(|(_, _, paths)| {
                paths
                    .iter()
                    .map(|p| p.edges.iter().fold(0u64, |acc, &e| acc | 1 << e))
                    .collect()
            })
            .collect()
    }
}

fn mask_is_rainbow(mut mask: u64, colors: &[u32]) -> bool {
    let mut used = 0u64;
    while mask != 0 {
        let e = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        let bit = 1u64 << colors[e];
        if used & bit != 0 {
            return false;
        }
        used |= bit;
    }
    true
}

/// Restricted-growth enumeration: edge 0 gets color 1 and edge `i` at most
/// one more than the largest color before it, so each partition of the edge
/// set into color classes is seen once.
struct Search<'a> {
    masks: &'a [Vec<u64>],
    colors: Vec<u32>,
    k: u32,
    min_top: u32,
    checked: u64,
    collect_all: bool,
    found: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn accepts(&self) -> bool {
        self.masks
            .iter()
            .all(|paths| paths.iter().any(|&m| mask_is_rainbow(m, &self.colors)))
    }

    /// Returns true to stop.
    fn run(&mut self, pos: usize, top: u32) -> bool {
        let m = self.colors.len();
        if pos == m {
            if top < self.min_top {
                return false;
            }
            self.checked += 1;
            if self.accepts() {
                self.found.push(self.colors.clone());
                return !self.collect_all;
            }
            return false;
        }
        if top + ((m - pos) as u32) < self.min_top {
            return false;
        }
        let ceiling = (top + 1).min(self.k);
        for c in 1..=ceiling {
            self.colors[pos] = c;
            if self.run(pos + 1, top.max(c)) {
                return true;
            }
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceOutcome {
    pub src: usize,
    /// First valid coloring found with `src` colors.
    pub coloring: EdgeColoring,
    pub colorings_checked: u64,
}

fn guard(g: &Graph, max_edges: usize) -> Result<(), OracleError> {
    let m = g.edge_count();
    let max = max_edges.min(HARD_EDGE_LIMIT);
    if m > max {
        return Err(OracleError::TooLarge { m, max });
    }
    Ok(())
}

/// Smallest `k` admitting a strong rainbow `k`-coloring, by exhaustive
/// search ascending from the number of cut edges.
pub fn brute_force_src(g: &Graph, max_edges: usize) -> Result<BruteForceOutcome, OracleError> {
    guard(g, max_edges)?;
    let m = g.edge_count();
    let table = ShortestPathTable::new(g)?;
    let masks = table.masks();
    let lower = decompose(g).cut_edges.len().max(1) as u32;
    let mut checked = 0;
    for k in lower..=m as u32 {
        let mut search = Search {
            masks: &masks,
            colors: vec![0; m],
            k,
            min_top: if k == lower { 1 } else { k },
            checked: 0,
            collect_all: false,
            found: Vec::new(),
        };
        search.run(0, 0);
        checked += search.checked;
        if let Some(colors) = search.found.pop() {
            let coloring =
                EdgeColoring::from_colors(colors).expect("restricted growth uses every color");
            return Ok(BruteForceOutcome {
                src: coloring.k() as usize,
                coloring,
                colorings_checked: checked,
            });
        }
    }
    unreachable!("distinct colors on every edge always strongly rainbow connect")
}

/// Every strong rainbow coloring with at most `k` colors, up to renaming of
/// colors.
pub fn strong_rainbow_colorings(
    g: &Graph,
    k: usize,
    max_edges: usize,
) -> Result<Vec<EdgeColoring>, OracleError> {
    guard(g, max_edges)?;
    let masks = ShortestPathTable::new(g)?.masks();
    let mut search = Search {
        masks: &masks,
        colors: vec![0; g.edge_count()],
        k: k as u32,
        min_top: 1,
        checked: 0,
        collect_all: true,
        found: Vec::new(),
    };
    search.run(0, 0);
    Ok(search
        .found
        .into_iter()
        .map(|c| EdgeColoring::from_colors(c).expect("restricted growth uses every color"))
        .collect())
}

/// True iff all black edges carry pairwise distinct colors.
pub fn check_distinct_black_colors(p: &BlackWhitePartition, c: &EdgeColoring) -> bool {
    let mut seen = HashSet::new();
    p.black_edges().all(|e| seen.insert(c.color(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Analysis;
    use crate::fixtures;

    fn coloring(colors: &[u32]) -> EdgeColoring {
        EdgeColoring::from_colors(colors.to_vec()).unwrap()
    }

    #[test]
    fn five_cycle_verification() {
        let g = fixtures::cycle(5);
        let good = coloring(&[1, 2, 3, 1, 2]);
        assert!(verify_strong_rainbow(&g, &good, true).unwrap().ok);
        assert!(verify_strong_rainbow(&g, &good, false).unwrap().ok);

        let mono = coloring(&[1; 5]);
        for hint in [true, false] {
            let out = verify_strong_rainbow(&g, &mono, hint).unwrap();
            assert!(!out.ok);
            let w = out.witness.unwrap();
            assert_eq!(w.path.len(), 2);
            assert_eq!(w.repeated_color, 1);
        }
    }

    #[test]
    fn partial_coloring_is_an_error() {
        let g = fixtures::cycle(5);
        assert_eq!(
            verify_strong_rainbow(&g, &coloring(&[1, 2, 3]), true),
            Err(OracleError::PartialColoring {
                expected: 5,
                got: 3
            })
        );
    }

    #[test]
    fn non_geodetic_graph_uses_any_rainbow_path() {
        // C4 with colors 1,1,2,2: opposite corners 0 and 2 have one path
        // 1-1 and one path 2-2; neither is rainbow.
        let g = fixtures::cycle(4);
        let out = verify_strong_rainbow(&g, &coloring(&[1, 1, 2, 2]), false).unwrap();
        assert!(!out.ok);
        // 1,2,1,2 makes every two-edge path rainbow.
        assert!(
            verify_strong_rainbow(&g, &coloring(&[1, 2, 1, 2]), false)
                .unwrap()
                .ok
        );
    }

    #[test]
    fn brute_force_small_values() {
        let src = |g: &Graph| brute_force_src(g, DEFAULT_MAX_EDGES).unwrap().src;
        assert_eq!(src(&fixtures::cycle(3)), 1);
        assert_eq!(src(&fixtures::path(3)), 2);
        assert_eq!(src(&fixtures::cycle(5)), 3);
        assert_eq!(src(&fixtures::bowtie()), 2);
        assert_eq!(src(&fixtures::c5_with_pendant()), 3);
        assert_eq!(src(&fixtures::cycle(4)), 2);
        assert_eq!(src(&fixtures::cycle(7)), 4);
    }

    #[test]
    fn brute_force_counts_each_partition_once() {
        // With no cut edges on C5 the search starts at k = 1: one coloring
        // with one color, 15 with exactly two (S(5,2)) and the first valid
        // three-coloring somewhere among the S(5,3) = 25 three-colorings.
        let out = brute_force_src(&fixtures::cycle(5), 9).unwrap();
        assert!(out.colorings_checked > 16 && out.colorings_checked <= 41);
        assert!(
            verify_strong_rainbow(&fixtures::cycle(5), &out.coloring, false)
                .unwrap()
                .ok
        );
    }

    #[test]
    fn brute_force_cap() {
        assert_eq!(
            brute_force_src(&fixtures::example02(), 9).unwrap_err(),
            OracleError::TooLarge { m: 13, max: 9 }
        );
    }

    #[test]
    fn optimal_bowtie_colorings_separate_black_edges() {
        let an = Analysis::new(fixtures::bowtie());
        let p = an.canonical_partition().unwrap();
        let all = strong_rainbow_colorings(&an.graph, 2, 9).unwrap();
        assert!(!all.is_empty());
        for c in &all {
            assert!(check_distinct_black_colors(&p, c));
        }
    }

    #[test]
    fn tree_colorings_are_bijections() {
        let an = Analysis::new(fixtures::path(4));
        let p = an.canonical_partition().unwrap();
        let all = strong_rainbow_colorings(&an.graph, 3, 9).unwrap();
        assert_eq!(all.len(), 1);
        assert!(check_distinct_black_colors(&p, &all[0]));
    }

    #[test]
    fn spot_pairs() {
        let g = fixtures::cycle(7);
        let c = coloring(&[1, 2, 3, 4, 1, 2, 3]);
        assert!(verify_pairs(&g, &c, &[(0, 3), (5, 1), (2, 6)]).unwrap().ok);
        let bad = coloring(&[1, 2, 1, 2, 1, 2, 3]);
        let out = verify_pairs(&g, &bad, &[(1, 0), (0, 3)]).unwrap();
        assert_eq!(out.witness.map(|w| (w.u, w.v)), Some((0, 3)));
    }
}
