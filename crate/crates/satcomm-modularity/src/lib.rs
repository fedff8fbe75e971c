//! Modularity: how much edge weight a partition keeps inside its communities
//! beyond what a degree-preserving random rewiring would leave there.
//!
//! Sums follow one fixed convention: pair sums range over ordered pairs with
//! self-loops counted once, and a node's degree includes its self-loop once.
//! Under that convention the total weight is the sum of all degrees and
//! community folding preserves modularity exactly, which the detection side
//! relies on.

mod error;
mod eval;
mod fixed;
mod oracle;

pub use error::ModularityError;
pub use eval::{modularity, modularity_bipartite, ModularityEval};
pub use fixed::{delta_trace, modularity_fixed, DeltaRecord, FixedModularity};
pub use oracle::{brute_force_optimal, brute_force_optimal_bipartite, DEFAULT_ORACLE_LIMIT};
