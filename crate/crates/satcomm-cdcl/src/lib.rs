//! A small conflict-driven clause-learning solver. Desk scale by design:
//! correct on every input, competitive on none. Its job is producing
//! checkpointed learnt-clause traces, not winning races.

mod augment;
mod solver;

pub use augment::augment;
pub use solver::{solve, SolveConfig, SolveError, SolveOutcome, SolveStats, Status};
