//! Redundant (fault-tolerant) identifying codes on finite graphs.
//!
//! The crate verifies identifying codes (IC) and redundant identifying codes
//! (RED:IC), decides their existence, computes exact minima by branch and
//! bound, enumerates trees and connected cubic graphs, builds the extremal
//! families, and implements the reduction from 3-SAT.

pub mod canon;
pub mod constructions;
pub mod detection;
pub mod existence;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod reduction;
pub mod solver;
mod vertex_set;

pub use detection::{verify, CodeKind, Violation};
pub use graph::{Family, Graph, GraphError};
pub use vertex_set::{VertexSet, MAX_VERTICES};
