//! Everything derived from one input graph, computed once.

use crate::antipodal::{enumerate_segments, AntipodalIndex, SegmentCatalog};
use crate::decomposition::{classify, decompose, Classification, Decomposition};
use crate::graph::Graph;
use crate::partition::{
    build_canonical_partition, validate_partition, BlackWhitePartition, PartitionError,
    ValidationReport,
};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: Graph,
    pub decomposition: Decomposition,
    pub classification: Classification,
    pub antipodes: AntipodalIndex,
    pub segments: SegmentCatalog,
}

impl Analysis {
    pub fn new(graph: Graph) -> Self {
        let decomposition = decompose(&graph);
        let classification = classify(&graph, &decomposition);
        let antipodes = AntipodalIndex::new(&decomposition);
        let segments = if classification.is_odd_cactus() {
            enumerate_segments(&decomposition, &antipodes)
        } else {
            SegmentCatalog::default()
        };
        Analysis {
            graph,
            decomposition,
            classification,
            antipodes,
            segments,
        }
    }

    pub fn canonical_partition(&self) -> Result<BlackWhitePartition, PartitionError> {
        build_canonical_partition(
            &self.graph,
            &self.decomposition,
            self.classification,
            &self.segments,
        )
    }

    pub fn validate(&self, p: &BlackWhitePartition) -> Result<ValidationReport, PartitionError> {
        validate_partition(&self.graph, &self.decomposition, &self.antipodes, p)
    }
}
