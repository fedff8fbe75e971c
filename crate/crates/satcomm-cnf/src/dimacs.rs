//! DIMACS CNF reading and writing.
//!
//! Accepted grammar: optional `c` comment lines, one `p cnf <n> <m>` header,
//! then clauses as whitespace-separated integers, each terminated by `0`.
//! A header clause count that disagrees with the body is tolerated and
//! reported as a warning, not an error.

use std::io::{self, Read, Write};
use std::path::Path;

use crate::{Clause, CnfError, Formula, Literal};

#[derive(Debug)]
pub struct ParsedDimacs {
    pub formula: Formula,
    /// `Some((declared, actual))` when the header clause count was wrong.
    pub clause_count_mismatch: Option<(usize, usize)>,
}

pub fn parse_dimacs(input: &str) -> Result<ParsedDimacs, CnfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut tokens: Vec<&str> = Vec::new();

    for line in input.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(CnfError::BadHeader("repeated `p` line".into()));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(CnfError::BadHeader(line.into()));
            }
            let n: u32 = parts[1]
                .parse()
                .map_err(|_| CnfError::BadHeader(line.into()))?;
            let m: usize = parts[2]
                .parse()
                .map_err(|_| CnfError::BadHeader(line.into()))?;
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return Err(CnfError::BadHeader(format!(
                "clause data before `p cnf` header: {line}"
            )));
        }
        tokens.extend(line.split_whitespace());
    }

    let (num_vars, declared) = header.ok_or(CnfError::EmptyInput)?;

    let mut clauses = Vec::with_capacity(declared);
    let mut current: Vec<Literal> = Vec::new();
    for tok in tokens {
        let code: i32 = tok
            .parse()
            .map_err(|_| CnfError::BadLiteral(tok.to_string()))?;
        match Literal::from_dimacs(code) {
            None => clauses.push(Clause::new(current.drain(..))),
            Some(lit) => {
                if lit.var() > num_vars {
                    return Err(CnfError::VarOutOfRange {
                        var: lit.var(),
                        num_vars,
                    });
                }
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        return Err(CnfError::UnterminatedClause);
    }

    let actual = clauses.len();
    let formula = Formula::new(num_vars, clauses)?;
    Ok(ParsedDimacs {
        formula,
        clause_count_mismatch: (declared != actual).then_some((declared, actual)),
    })
}

pub fn write_dimacs(f: &Formula, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "p cnf {} {}", f.num_vars(), f.num_clauses())?;
    for clause in f.clauses() {
        for lit in clause.literals() {
            write!(w, "{} ", lit.to_dimacs())?;
        }
        writeln!(w, "0")?;
    }
    Ok(())
}

pub fn write_dimacs_string(f: &Formula) -> String {
    let mut buf = Vec::new();
    write_dimacs(f, &mut buf).expect("write to Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

pub fn read_dimacs_file(path: impl AsRef<Path>) -> Result<ParsedDimacs, CnfError> {
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    parse_dimacs(&text)
}

pub fn write_dimacs_file(path: impl AsRef<Path>, f: &Formula) -> Result<(), CnfError> {
    let mut out = io::BufWriter::new(std::fs::File::create(path)?);
    write_dimacs(f, &mut out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_formula() {
        let p = parse_dimacs("p cnf 3 1\n1 2 3 0").unwrap();
        assert_eq!(p.formula.num_vars(), 3);
        assert_eq!(p.formula.num_clauses(), 1);
        assert_eq!(
            p.formula.clauses()[0].literals(),
            Clause::from_dimacs(&[1, 2, 3]).literals()
        );
        assert!(p.clause_count_mismatch.is_none());
    }

    #[test]
    fn parses_two_binary_clauses() {
        let p = parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0").unwrap();
        assert_eq!(p.formula.num_clauses(), 2);
        assert!(p.formula.clauses().iter().all(|c| c.width() == 2));
    }

    #[test]
    fn canonicalizes_duplicate_var() {
        let p = parse_dimacs("p cnf 2 1\n1 1 -2 0").unwrap();
        let c = &p.formula.clauses()[0];
        assert_eq!(c.literals(), Clause::from_dimacs(&[1, -2]).literals());
        assert_eq!(c.width(), 2);
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let p = parse_dimacs("c a comment\np cnf 3 2\nc inner\n1 2\n3 0 -1 0\n").unwrap();
        assert_eq!(p.formula.num_clauses(), 2);
        assert_eq!(p.formula.clauses()[0].width(), 3);
    }

    #[test]
    fn header_mismatch_is_warning() {
        let p = parse_dimacs("p cnf 2 5\n1 0\n2 0\n").unwrap();
        assert_eq!(p.clause_count_mismatch, Some((5, 2)));
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse_dimacs(""), Err(CnfError::EmptyInput)));
        assert!(matches!(
            parse_dimacs("c only comments\n"),
            Err(CnfError::EmptyInput)
        ));
        assert!(matches!(
            parse_dimacs("p cnf x 1\n1 0"),
            Err(CnfError::BadHeader(_))
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 3 0"),
            Err(CnfError::VarOutOfRange { var: 3, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 2"),
            Err(CnfError::UnterminatedClause)
        ));
    }

    #[test]
    fn writes_single_clause() {
        let f = Formula::new(1, vec![Clause::from_dimacs(&[1])]).unwrap();
        assert_eq!(write_dimacs_string(&f), "p cnf 1 1\n1 0\n");
    }

    #[test]
    fn writes_empty_formula() {
        let f = Formula::new(4, vec![]).unwrap();
        assert_eq!(write_dimacs_string(&f), "p cnf 4 0\n");
    }
}
