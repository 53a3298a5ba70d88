//! Connected dominating set partitions for structured graph classes and
//! Győri–Lovász partitions driven by disjoint dominating trees.

pub mod cds;
pub mod error;
pub mod flow;
pub mod gen;
pub mod gl;
pub mod graph;
pub mod io;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{DominatingTree, Graph, VertexId, VertexSet};
