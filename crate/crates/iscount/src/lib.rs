pub mod basecase;
pub mod count;
pub mod decompose;
pub mod error;
pub mod exact;
pub mod graph;
pub mod potential;
pub mod transform;
pub mod weighted;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use weighted::WeightedGraph;
