//! Fixed-partition modularity over a growing clause set.
//!
//! Replays the learnt-clause experiments: the partition stays pinned to the
//! original formula while clauses land one at a time, and every addition
//! reports its exact modularity change. Contractually identical to rebuilding
//! the augmented VIG and evaluating from scratch, but linear in the clause's
//! own pair count.

use satcomm_cnf::{Clause, Formula};
use satcomm_graph::{KahanSum, Partition};

use crate::{ModularityError, ModularityEval};

#[derive(Clone, Debug)]
pub struct FixedModularity {
    labels: Vec<u32>,
    num_vars: u32,
    community_count: usize,
    w_total: f64,
    intra: Vec<f64>,
    degree: Vec<f64>,
}

impl FixedModularity {
    /// Seeds the running sums with the VIG contributions of `f` under `p`
    /// (a partition of the variables; node i is variable i + 1).
    pub fn new(f: &Formula, p: &Partition) -> Result<FixedModularity, ModularityError> {
        if p.node_count() != f.num_vars() as usize {
            return Err(ModularityError::PartitionSize {
                partition: p.node_count(),
                graph: f.num_vars() as usize,
            });
        }
        let (compact, k) = p.compact();
        let mut state = FixedModularity {
            labels: compact.labels().to_vec(),
            num_vars: f.num_vars(),
            community_count: k,
            w_total: 0.0,
            intra: vec![0.0; k],
            degree: vec![0.0; k],
        };
        for clause in f.clauses() {
            state.accumulate(clause)?;
        }
        Ok(state)
    }

    pub fn eval(&self) -> ModularityEval {
        if self.w_total <= 0.0 {
            return ModularityEval {
                q: 0.0,
                degenerate: true,
            };
        }
        let mut q = KahanSum::default();
        for i in 0..self.community_count {
            let share = self.degree[i] / self.w_total;
            q.add(self.intra[i] / self.w_total - share * share);
        }
        ModularityEval {
            q: q.value(),
            degenerate: false,
        }
    }

    pub fn q(&self) -> f64 {
        self.eval().q
    }

    /// Adds one clause's VIG weight and returns the resulting change in Q.
    pub fn add_clause(&mut self, clause: &Clause) -> Result<f64, ModularityError> {
        let before = self.q();
        self.accumulate(clause)?;
        Ok(self.q() - before)
    }

    fn accumulate(&mut self, clause: &Clause) -> Result<(), ModularityError> {
        let vars: Vec<u32> = clause.vars().collect();
        if let Some(&v) = vars.last() {
            if v > self.num_vars {
                return Err(ModularityError::VarOutOfRange {
                    var: v,
                    num_vars: self.num_vars,
                });
            }
        }
        let s = vars.len();
        if s < 2 {
            return Ok(()); // no VIG edges, Q untouched
        }
        let pair_weight = 1.0 / (s * (s - 1) / 2) as f64;
        let per_var = 2.0 / s as f64;
        for i in 0..s {
            let ci = self.labels[(vars[i] - 1) as usize] as usize;
            self.degree[ci] += per_var;
            for j in i + 1..s {
                let cj = self.labels[(vars[j] - 1) as usize] as usize;
                if ci == cj {
                    self.intra[ci] += 2.0 * pair_weight;
                }
            }
        }
        self.w_total += 2.0; // every wide clause adds one unit of undirected weight
        Ok(())
    }
}

/// Modularity of `f` plus `learnt` under the fixed partition `p`.
pub fn modularity_fixed(
    f: &Formula,
    learnt: &[Clause],
    p: &Partition,
) -> Result<ModularityEval, ModularityError> {
    let mut state = FixedModularity::new(f, p)?;
    for clause in learnt {
        state.add_clause(clause)?;
    }
    Ok(state.eval())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaRecord {
    /// 1-based position in the learnt sequence.
    pub clause_index: usize,
    pub delta_q: f64,
    pub q_after: f64,
}

/// Per-clause modularity changes under a fixed partition; the running
/// `q_after` of record i is exactly `q_after` of record i-1 plus `delta_q`.
pub fn delta_trace(
    f: &Formula,
    learnt: &[Clause],
    p: &Partition,
) -> Result<Vec<DeltaRecord>, ModularityError> {
    let mut state = FixedModularity::new(f, p)?;
    let mut records = Vec::with_capacity(learnt.len());
    for (i, clause) in learnt.iter().enumerate() {
        let delta_q = state.add_clause(clause)?;
        records.push(DeltaRecord {
            clause_index: i + 1,
            delta_q,
            q_after: state.q(),
        });
    }
    Ok(records)
}
