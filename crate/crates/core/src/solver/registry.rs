//! Interchangeable ways of obtaining the strong rainbow connection number,
//! looked up by name.

use std::fmt;

use thiserror::Error;

use super::{src_formula, strong_rainbow_coloring_with, SolveError};
use crate::analysis::Analysis;
use crate::coloring::EdgeColoring;
use crate::oracle::{brute_force_src, DEFAULT_MAX_EDGES};

/// How the segment coloring picks the black edge whose color an `E_ant` edge copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CopyRoute {
    /// Subtree minima over the block-cut tree; linear overall.
    #[default]
    Indexed,
    /// An explicit separation per `E_ant` edge; quadratic overall.
    Separation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub src: usize,
    pub coloring: Option<EdgeColoring>,
}

pub trait Solver: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn solve(&self, an: &Analysis) -> Result<Solution, SolveError>;
}

impl fmt::Debug for dyn Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Solver")
            .field("name", &self.name())
            .finish()
    }
}

pub struct FormulaOnly;

impl Solver for FormulaOnly {
    fn name(&self) -> &'static str {
        "formula"
    }

    fn summary(&self) -> &'static str {
        "closed form in linear time, no coloring"
    }

    fn solve(&self, an: &Analysis) -> Result<Solution, SolveError> {
        Ok(Solution {
            src: src_formula(an)?,
            coloring: None,
        })
    }
}

pub struct SegmentColoring {
    pub route: CopyRoute,
}

impl Solver for SegmentColoring {
    fn name(&self) -> &'static str {
        match self.route {
            CopyRoute::Indexed => "segment-coloring",
            CopyRoute::Separation => "segment-coloring-separation",
        }
    }

    fn summary(&self) -> &'static str {
        match self.route {
            CopyRoute::Indexed => "optimal coloring, block-cut tree lookups for E_ant edges",
            CopyRoute::Separation => "optimal coloring, one explicit separation per E_ant edge",
        }
    }

    fn solve(&self, an: &Analysis) -> Result<Solution, SolveError> {
        let res = strong_rainbow_coloring_with(an, self.route)?;
        Ok(Solution {
            src: res.src,
            coloring: Some(res.coloring),
        })
    }
}

pub struct BruteForce {
    pub max_edges: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl Solver for BruteForce {
    fn name(&self) -> &'static str {
        "bruteforce"
    }

    fn summary(&self) -> &'static str {
        "exhaustive search over color partitions, any graph, tiny inputs only"
    }

    fn solve(&self, an: &Analysis) -> Result<Solution, SolveError> {
        let found = brute_force_src(&an.graph, self.max_edges)?;
        Ok(Solution {
            src: found.src,
            coloring: Some(found.coloring),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("a solver named {0:?} is already registered")]
    Duplicate(&'static str),
}

/// Solvers in registration order, unique by name.
#[derive(Default)]
pub struct SolverRegistry {
    entries: Vec<Box<dyn Solver>>,
}

impl SolverRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        let builtins: [Box<dyn Solver>; 4] = [
            Box::new(FormulaOnly),
            Box::new(SegmentColoring {
                route: CopyRoute::Indexed,
            }),
            Box::new(SegmentColoring {
                route: CopyRoute::Separation,
            }),
            Box::new(BruteForce::default()),
        ];
        for s in builtins {
            reg.register(s).expect("builtin names are distinct");
        }
        reg
    }

    pub fn register(&mut self, solver: Box<dyn Solver>) -> Result<(), RegistryError> {
        if self.get(solver.name()).is_some() {
            return Err(RegistryError::Duplicate(solver.name()));
        }
        self.entries.push(solver);
        Ok(())
    }

    /// Replaces any solver of the same name.
    pub fn replace(&mut self, solver: Box<dyn Solver>) {
        match self.entries.iter().position(|s| s.name() == solver.name()) {
            Some(i) => self.entries[i] = solver,
            None => self.entries.push(solver),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn Solver> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Solver> {
        self.entries.iter().map(|s| s.as_ref())
    }
}
