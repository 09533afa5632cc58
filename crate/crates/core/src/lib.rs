//! Boundary energies of separating sets on finite metric measure graphs.
//!
//! The crate builds a weighted graph carrying vertex measures and edge
//! lengths, evaluates a two-pole Riesz potential on it, and computes
//! perimeter, Hausdorff, Minkowski, capacity and modulus energies of
//! separating sets. The infimum of the boundary-vertex energy over all
//! separating sets is solved exactly as a node-weighted minimum cut.

#![no_std]

extern crate alloc;

pub mod energies;
pub mod error;
mod flow;
pub mod graph;
pub mod regularity;
pub mod poincare;
pub mod riesz;
pub mod separating;
pub mod spaces;

pub use error::{Error, Result};
pub use graph::{build_graph, GraphBuilder, MetricMeasureGraph, VertexId};
pub use riesz::{riesz_potential, RieszField};
pub use separating::SeparatingSet;
