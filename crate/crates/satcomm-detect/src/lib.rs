//! Community detection over the incidence graphs.
//!
//! Three interchangeable strategies sit behind the [`CommunityDetector`]
//! trait and are selected by name at runtime: greedy local moving with graph
//! folding (Louvain), its bipartite adaptation with a side-preserving fold,
//! and weighted label propagation.

mod bipartite;
mod louvain;
mod lpa;
mod registry;
mod report;

pub use bipartite::{fold_bipartite, louvain_bipartite, one_level_bipartite, BipartiteFold};
pub use louvain::{fold, louvain, louvain_levels, one_level, OneLevelOutcome};
pub use lpa::label_propagation;
pub use registry::{detector_by_name, detectors, CommunityDetector};
pub use report::{DetectOptions, ModularityReport};
