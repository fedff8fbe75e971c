//! VIG and CVIG construction.
//!
//! VIG: one node per variable (node `i` is variable `i + 1`); a clause over s
//! distinct variables spreads a total weight of one over its s-choose-2
//! variable pairs. CVIG: variables on the left, clauses on the right; each of
//! a clause's s variables connects to it with weight 1/s, again one unit per
//! clause.

use satcomm_cnf::Formula;

use crate::{BipartiteBuilder, BipartiteGraph, GraphBuilder, WeightedGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VigStats {
    /// Clauses of width < 2, which generate no VIG edge.
    pub skipped_narrow_clauses: usize,
    /// Clauses containing both polarities of some variable (kept, but worth
    /// surfacing since the weight counts their variables once).
    pub tautological_clauses: usize,
}

pub fn build_vig(f: &Formula) -> (WeightedGraph, VigStats) {
    let mut builder = GraphBuilder::new(f.num_vars() as usize);
    let mut stats = VigStats::default();
    for clause in f.clauses() {
        if clause.is_tautology() {
            stats.tautological_clauses += 1;
        }
        let vars: Vec<u32> = clause.vars().collect();
        let s = vars.len();
        if s < 2 {
            stats.skipped_narrow_clauses += 1;
            continue;
        }
        let pair_weight = 1.0 / (s * (s - 1) / 2) as f64;
        for i in 0..s {
            for j in i + 1..s {
                builder.add_edge(vars[i] - 1, vars[j] - 1, pair_weight);
            }
        }
    }
    (builder.build(), stats)
}

pub fn build_cvig(f: &Formula) -> BipartiteGraph {
    let mut builder = BipartiteBuilder::new(f.num_vars() as usize, f.num_clauses());
    for (idx, clause) in f.clauses().iter().enumerate() {
        let s = clause.width();
        if s == 0 {
            continue;
        }
        let w = 1.0 / s as f64;
        for v in clause.vars() {
            builder.add_edge(v - 1, idx as u32, w);
        }
    }
    builder.build()
}
