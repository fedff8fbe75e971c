//! Sparse weighted graphs for CNF structure analysis: the variable incidence
//! graph (VIG), the bipartite clause-variable incidence graph (CVIG),
//! connected components, community coarsening and DOT export.

mod bipartite;
mod community;
mod components;
mod error;
mod graph;
mod partition;
pub mod partition_io;
mod vig;

pub use bipartite::{BipartiteBuilder, BipartiteGraph, Side};
pub use community::{build_community_graph, export_dot, CommunityGraph};
pub use components::connected_components;
pub use error::GraphError;
pub use graph::{GraphBuilder, KahanSum, WeightedGraph};
pub use partition::Partition;
pub use vig::{build_cvig, build_vig, VigStats};
