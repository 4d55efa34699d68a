//! Weighted and generalized-cost causal graph search on moral DAGs.

pub mod chordal;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod mec;
pub mod oracle;
pub mod rng;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Dag, InterventionSet, PGraph, WeightedInstance};
pub use oracle::Simulator;
