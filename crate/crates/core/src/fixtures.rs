//! Small named graphs used across tests, examples and the CLI self-test.

use crate::graph::{build_graph, EdgeId, Graph, VertexId};

/// Edge list of the 12-vertex, 13-edge worked example. Vertex labels are
/// `1..=12`; edge `e_i` is the `i`-th line.
pub const EXAMPLE02_EDGES: [(u64, u64); 13] = [
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 1),
    (6, 8),
    (4, 9),
    (9, 10),
    (10, 11),
    (11, 12),
    (12, 10),
];

pub fn example02() -> Graph {
    build_graph(&EXAMPLE02_EDGES).expect("valid fixture")
}

/// Dense id of vertex `v_i` in [`example02`] (and any fixture labelled from 1).
pub fn v(i: usize) -> VertexId {
    i - 1
}

/// Edge id of `e_i` in [`example02`].
pub fn e(i: usize) -> EdgeId {
    i - 1
}

/// `C_n` on labels `1..=n`, edge `i` joining `i+1` and `i+2 (mod n)`.
pub fn cycle(n: u64) -> Graph {
    let pairs: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
    build_graph(&pairs).expect("valid cycle")
}

/// Path on `n` vertices labelled `1..=n`.
pub fn path(n: u64) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    build_graph(&pairs).expect("valid path")
}

/// Two triangles sharing vertex 1: `{1,2,3}` and `{1,4,5}`.
pub fn bowtie() -> Graph {
    build_graph(&[(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)]).expect("valid bowtie")
}

/// `C_5` on labels `1..=5` with a pendant edge `1–6`.
pub fn c5_with_pendant() -> Graph {
    build_graph(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 6)]).expect("valid fixture")
}

/// 9-cycle `v1..v9` with pendant edges at `v1` and `v3`, making exactly
/// those two cycle vertices cut vertices.
pub fn nine_cycle_two_cuts() -> Graph {
    let mut pairs: Vec<(u64, u64)> = (1..=9).map(|i| (i, i % 9 + 1)).collect();
    pairs.push((1, 10));
    pairs.push((3, 11));
    build_graph(&pairs).expect("valid fixture")
}
