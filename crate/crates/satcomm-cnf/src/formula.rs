use std::fmt;

use crate::CnfError;

/// A signed occurrence of a variable. Variables are 1-based, DIMACS style.
///
/// Stored as the nonzero DIMACS code: `+v` for a positive occurrence,
/// `-v` for a negated one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(i32);

impl Literal {
    pub fn new(var: u32, positive: bool) -> Literal {
        assert!(var >= 1 && var <= i32::MAX as u32, "bad variable {var}");
        Literal(if positive { var as i32 } else { -(var as i32) })
    }

    /// `3` -> positive x3, `-3` -> negated x3. Zero is not a literal.
    pub fn from_dimacs(code: i32) -> Option<Literal> {
        if code == 0 {
            None
        } else {
            Some(Literal(code))
        }
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negated(self) -> Literal {
        Literal(-self.0)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A disjunction of literals, kept in canonical form: literals sorted by
/// (variable, positive-first) with exact duplicates merged. Both polarities of
/// a variable may remain (tautological clause); the clause width counts each
/// variable once either way.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Clause {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_by_key(|l| (l.var(), !l.is_positive()));
        lits.dedup();
        Clause { lits }
    }

    pub fn from_dimacs(codes: &[i32]) -> Clause {
        Clause::new(codes.iter().filter_map(|&c| Literal::from_dimacs(c)))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Number of distinct variables, the `|c|` used by the graph weights.
    pub fn width(&self) -> usize {
        self.vars().count()
    }

    /// Distinct variables in ascending order.
    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        let mut prev = 0u32;
        self.lits.iter().filter_map(move |l| {
            let v = l.var();
            (v != prev).then(|| {
                prev = v;
                v
            })
        })
    }

    pub fn is_tautology(&self) -> bool {
        self.lits.windows(2).any(|w| w[0].var() == w[1].var())
    }

    pub fn max_var(&self) -> u32 {
        self.lits.last().map_or(0, |l| l.var())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.lits).finish()
    }
}

/// A CNF instance: a declared variable count plus a clause list.
///
/// Duplicate clauses are retained on purpose; downstream graph weights
/// accumulate per clause.
#[derive(Clone, Debug, PartialEq)]
pub struct Formula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Formula, CnfError> {
        for c in &clauses {
            let v = c.max_var();
            if v > num_vars {
                return Err(CnfError::VarOutOfRange { var: v, num_vars });
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Clause/variable ratio m/n.
    pub fn ratio(&self) -> f64 {
        self.clauses.len() as f64 / self.num_vars as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(code: i32) -> Literal {
        Literal::from_dimacs(code).unwrap()
    }

    #[test]
    fn literal_roundtrip() {
        let l = Literal::new(7, false);
        assert_eq!(l.to_dimacs(), -7);
        assert_eq!(l.var(), 7);
        assert!(!l.is_positive());
        assert_eq!(l.negated(), Literal::new(7, true));
        assert_eq!(Literal::from_dimacs(0), None);
    }

    #[test]
    fn clause_canonicalizes_duplicates() {
        // duplicate literal merged, width counts distinct vars
        let c = Clause::from_dimacs(&[1, 1, -2]);
        assert_eq!(c.literals(), &[lit(1), lit(-2)]);
        assert_eq!(c.width(), 2);
        assert!(!c.is_tautology());
    }

    #[test]
    fn tautology_keeps_both_polarities_width_one() {
        let c = Clause::from_dimacs(&[1, -1]);
        assert_eq!(c.literals(), &[lit(1), lit(-1)]);
        assert_eq!(c.width(), 1);
        assert!(c.is_tautology());
        assert_eq!(c.vars().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn clause_sorted_by_var_positive_first() {
        let c = Clause::from_dimacs(&[-3, 2, 3]);
        assert_eq!(c.literals(), &[lit(2), lit(3), lit(-3)]);
    }

    #[test]
    fn formula_rejects_var_overflow() {
        let err = Formula::new(2, vec![Clause::from_dimacs(&[1, 3])]).unwrap_err();
        assert!(matches!(
            err,
            CnfError::VarOutOfRange { var: 3, num_vars: 2 }
        ));
    }

    #[test]
    fn ratio() {
        let f = Formula::new(4, vec![Clause::from_dimacs(&[1]), Clause::from_dimacs(&[2])])
            .unwrap();
        assert_eq!(f.ratio(), 0.5);
    }
}
