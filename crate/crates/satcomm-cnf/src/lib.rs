//! CNF formula model and instance plumbing: DIMACS reading/writing, random and
//! planted-community k-CNF generation, and learnt-clause trace files.

pub mod dimacs;
mod error;
mod formula;
pub mod generate;
pub mod trace;

pub use error::CnfError;
pub use formula::{Clause, Formula, Literal};
pub use generate::{gen_planted, gen_random, GeneratorConfig, DEFAULT_SEED};
pub use trace::LearntTrace;
