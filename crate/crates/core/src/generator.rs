//! Seeded random odd cacti, grown by attaching pendant edges and fresh odd
//! cycles at existing vertices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvalidSpec {
    #[error("cycle length {0} is even")]
    EvenCycle(usize),
    #[error("cycle length {0} is below 3")]
    ShortCycle(usize),
    #[error("no cycle lengths given but pendant probability is below 1")]
    EmptyDistribution,
    #[error("pendant probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("target vertex count {0} is below 2")]
    TooFewVertices(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub target_vertices: usize,
    /// Drawn uniformly, so repeats weight a length.
    pub cycle_lengths: Vec<usize>,
    pub pendant_probability: f64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), InvalidSpec> {
        if self.target_vertices < 2 {
            return Err(InvalidSpec::TooFewVertices(self.target_vertices));
        }
        if !(0.0..=1.0).contains(&self.pendant_probability) {
            return Err(InvalidSpec::Probability(self.pendant_probability));
        }
        for &len in &self.cycle_lengths {
            if len < 3 {
                return Err(InvalidSpec::ShortCycle(len));
            }
            if len % 2 == 0 {
                return Err(InvalidSpec::EvenCycle(len));
            }
        }
        if self.cycle_lengths.is_empty() && self.pendant_probability < 1.0 {
            return Err(InvalidSpec::EmptyDistribution);
        }
        Ok(())
    }
}

/// Vertices are labelled `1..=n` in creation order. The result may overshoot
/// `target_vertices` by up to the longest cycle length minus two.
pub fn generate(spec: &GenSpec) -> Result<Graph, InvalidSpec> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut n: u64 = 1;
    let mut edges: Vec<(u64, u64)> = Vec::new();
    while (n as usize) < spec.target_vertices {
        let at = rng.gen_range(1..=n);
        let pendant = spec.cycle_lengths.is_empty() || rng.gen_bool(spec.pendant_probability);
        if pendant {
            n += 1;
            edges.push((at, n));
        } else {
            let len = spec.cycle_lengths[rng.gen_range(0..spec.cycle_lengths.len())];
            let mut prev = at;
            for _ in 1..len {
                n += 1;
                edges.push((prev, n));
                prev = n;
            }
            edges.push((prev, at));
        }
    }
    Ok(Graph::from_edges(&edges).expect("attachment keeps the graph simple and connected"))
}
