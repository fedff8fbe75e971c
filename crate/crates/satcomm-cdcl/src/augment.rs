use satcomm_cnf::{Clause, CnfError, Formula};

/// Appends learnt clauses to a formula, keeping the variable count. The
/// result is equisatisfiable with the original as long as the clauses are
/// implied, which is what the solver guarantees for its traces.
pub fn augment(f: &Formula, learnt: &[Clause]) -> Result<Formula, CnfError> {
    let mut clauses = Vec::with_capacity(f.num_clauses() + learnt.len());
    clauses.extend_from_slice(f.clauses());
    clauses.extend_from_slice(learnt);
    Formula::new(f.num_vars(), clauses)
}
