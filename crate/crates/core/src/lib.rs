//! Strong rainbow connection number of odd cactus graphs: block
//! decomposition, antipodal cycle segments, black-white partitions, an
//! optimal coloring routine, and an exhaustive oracle to check them against.

pub mod analysis;
pub mod antipodal;
pub mod coloring;
pub mod decomposition;
pub mod fixtures;
pub mod generator;
pub mod graph;
pub mod invariants;
pub mod oracle;
pub mod partition;
pub mod report;
pub mod solver;

pub use analysis::Analysis;
pub use coloring::EdgeColoring;
pub use decomposition::Classification;
pub use graph::{build_graph, parse_edge_list, EdgeId, Graph, GraphError, VertexId};
pub use solver::{
    src_formula, strong_rainbow_coloring, SolveError, Solver, SolverRegistry, SrcResult,
};
