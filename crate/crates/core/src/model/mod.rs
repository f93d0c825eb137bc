//! Combinatorial domain types: rank-3 matroids given by their rank-2 flats,
//! graphs, posets, wiring diagrams and sign vectors.

mod graph;
mod matroid;
mod poset;
mod sign;
mod wiring;

pub use graph::Graph;
pub use matroid::Rank3Matroid;
pub use poset::{poset_is_bipartite, Poset};
pub use sign::{ParseSignError, SignVector};
pub use wiring::{validate_wiring, WiringDiagram};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate poset element {0:?}")]
    DuplicateElement(String),
    #[error("unknown poset element {0:?}")]
    UnknownElement(String),
    #[error("relation {0:?} < {0:?} is reflexive")]
    Reflexive(String),
    #[error("relations between {0:?} and {1:?} form a cycle")]
    Cycle(String, String),
}

/// List of violated invariants; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub(crate) fn push(&mut self, issue: impl Into<String>) {
        self.issues.push(issue.into());
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (k, issue) in self.issues.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}
