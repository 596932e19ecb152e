//! L² zeta functions of graphs with a free cocompact ℤ-action.

pub mod algebra;
pub mod census;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod numeric;
pub mod surface;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{DeltaU, Edge, GraphInvariants, VoltageGraph};
