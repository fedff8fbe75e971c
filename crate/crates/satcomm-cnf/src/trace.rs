//! Learnt-clause trace files.
//!
//! A trace is a set of checkpoints, one per conflict count X, each holding the
//! clauses the solver retained at that moment. On disk every checkpoint is a
//! DIMACS-bodied file named `<base>.learnt.<X>.cnf` whose first line is the
//! comment `c checkpoint <X>`.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::{dimacs, Clause, CnfError};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LearntTrace {
    num_vars: u32,
    checkpoints: BTreeMap<u64, Vec<Clause>>,
}

impl LearntTrace {
    pub fn new(num_vars: u32) -> LearntTrace {
        LearntTrace {
            num_vars,
            checkpoints: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn insert(&mut self, conflicts: u64, clauses: Vec<Clause>) -> Result<(), CnfError> {
        for c in &clauses {
            let v = c.max_var();
            if v > self.num_vars {
                return Err(CnfError::VarOutOfRange {
                    var: v,
                    num_vars: self.num_vars,
                });
            }
        }
        if self.checkpoints.contains_key(&conflicts) {
            return Err(CnfError::DuplicateCheckpoint(conflicts));
        }
        self.checkpoints.insert(conflicts, clauses);
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn get(&self, conflicts: u64) -> Option<&[Clause]> {
        self.checkpoints.get(&conflicts).map(Vec::as_slice)
    }

    /// Checkpoints in increasing conflict order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &[Clause])> {
        self.checkpoints.iter().map(|(&x, c)| (x, c.as_slice()))
    }
}

/// Writes one `<base>.learnt.<X>.cnf` per checkpoint into `dir`, returning the
/// paths in checkpoint order.
pub fn write_learnt_trace(
    dir: impl AsRef<Path>,
    base: &str,
    trace: &LearntTrace,
) -> Result<Vec<PathBuf>, CnfError> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(trace.len());
    for (x, clauses) in trace.iter() {
        let path = dir.join(format!("{base}.learnt.{x}.cnf"));
        let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(out, "c checkpoint {x}")?;
        writeln!(out, "p cnf {} {}", trace.num_vars(), clauses.len())?;
        for clause in clauses {
            for lit in clause.literals() {
                write!(out, "{} ", lit.to_dimacs())?;
            }
            writeln!(out, "0")?;
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Reads a trace back from a single checkpoint file or from a directory
/// containing `<base>.learnt.<X>.cnf` files for exactly one base.
pub fn read_learnt_trace(path: impl AsRef<Path>) -> Result<LearntTrace, CnfError> {
    let path = path.as_ref();
    let files = if path.is_dir() {
        let mut found: Vec<(String, u64, PathBuf)> = Vec::new();
        for entry in std::fs::read_dir(path)? {
            let p = entry?.path();
            if let Some(name) = p.file_name().and_then(|n| n.to_str()) {
                if let Some((base, x)) = split_trace_name(name) {
                    found.push((base.to_string(), x, p.clone()));
                }
            }
        }
        if found.is_empty() {
            return Err(CnfError::NoTraceFiles(path.display().to_string()));
        }
        let mut bases: Vec<String> = found.iter().map(|(b, _, _)| b.clone()).collect();
        bases.sort();
        bases.dedup();
        if bases.len() > 1 {
            return Err(CnfError::AmbiguousTraceBase {
                dir: path.display().to_string(),
                bases,
            });
        }
        found.sort_by_key(|(_, x, _)| *x);
        found.into_iter().map(|(_, x, p)| (Some(x), p)).collect()
    } else {
        let x = path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(|n| split_trace_name(n).map(|(_, x)| x));
        vec![(x, path.to_path_buf())]
    };

    let mut trace: Option<LearntTrace> = None;
    for (name_x, file) in files {
        let display = file.display().to_string();
        let mut text = String::new();
        std::fs::File::open(&file)?.read_to_string(&mut text)?;
        let comment_x = checkpoint_comment(&text)
            .ok_or_else(|| CnfError::MissingCheckpoint(display.clone()))?;
        if let Some(nx) = name_x {
            if nx != comment_x {
                return Err(CnfError::CheckpointMismatch {
                    file: display,
                    comment: comment_x,
                    name: nx,
                });
            }
        }
        let parsed = dimacs::parse_dimacs(&text)?;
        let t = trace.get_or_insert_with(|| LearntTrace::new(parsed.formula.num_vars()));
        if t.num_vars() != parsed.formula.num_vars() {
            return Err(CnfError::TraceVarCountMismatch(
                t.num_vars(),
                parsed.formula.num_vars(),
            ));
        }
        t.insert(comment_x, parsed.formula.clauses().to_vec())?;
    }
    Ok(trace.expect("at least one file was read"))
}

fn split_trace_name(name: &str) -> Option<(&str, u64)> {
    let stem = name.strip_suffix(".cnf")?;
    let (rest, x) = stem.rsplit_once('.')?;
    let base = rest.strip_suffix(".learnt")?;
    Some((base, x.parse().ok()?))
}

fn checkpoint_comment(text: &str) -> Option<u64> {
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("c checkpoint") {
            return rest.trim().parse().ok();
        }
        if !line.is_empty() && !line.starts_with('c') {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_trace() -> LearntTrace {
        let mut t = LearntTrace::new(5);
        t.insert(
            1000,
            vec![
                Clause::from_dimacs(&[1, -2]),
                Clause::from_dimacs(&[3]),
                Clause::from_dimacs(&[-4, 5, 1]),
            ],
        )
        .unwrap();
        t.insert(10_000, vec![]).unwrap();
        t
    }

    #[test]
    fn writes_one_file_per_checkpoint() {
        let dir = tempfile::tempdir().unwrap();
        let paths = write_learnt_trace(dir.path(), "toy", &toy_trace()).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths[0].ends_with("toy.learnt.1000.cnf"));
        let text = std::fs::read_to_string(&paths[0]).unwrap();
        assert!(text.starts_with("c checkpoint 1000\np cnf 5 3\n"));
        assert_eq!(text.lines().count(), 5);
        // empty checkpoint still gets header lines
        let empty = std::fs::read_to_string(&paths[1]).unwrap();
        assert_eq!(empty, "c checkpoint 10000\np cnf 5 0\n");
    }

    #[test]
    fn roundtrip_via_directory_and_file() {
        let dir = tempfile::tempdir().unwrap();
        let trace = toy_trace();
        let paths = write_learnt_trace(dir.path(), "toy", &trace).unwrap();
        assert_eq!(read_learnt_trace(dir.path()).unwrap(), trace);

        let single = read_learnt_trace(&paths[0]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.get(1000), trace.get(1000));
    }

    #[test]
    fn missing_checkpoint_comment_is_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.learnt.7.cnf");
        std::fs::write(&path, "p cnf 2 1\n1 2 0\n").unwrap();
        assert!(matches!(
            read_learnt_trace(&path),
            Err(CnfError::MissingCheckpoint(_))
        ));
    }

    #[test]
    fn name_comment_mismatch_is_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.learnt.7.cnf");
        std::fs::write(&path, "c checkpoint 8\np cnf 2 1\n1 2 0\n").unwrap();
        assert!(matches!(
            read_learnt_trace(&path),
            Err(CnfError::CheckpointMismatch { .. })
        ));
    }

    #[test]
    fn mixed_bases_rejected() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("a.learnt.1.cnf"),
            "c checkpoint 1\np cnf 1 0\n",
        )
        .unwrap();
        std::fs::write(
            dir.path().join("b.learnt.1.cnf"),
            "c checkpoint 1\np cnf 1 0\n",
        )
        .unwrap();
        assert!(matches!(
            read_learnt_trace(dir.path()),
            Err(CnfError::AmbiguousTraceBase { .. })
        ));
    }

    #[test]
    fn insert_validates_vars() {
        let mut t = LearntTrace::new(2);
        assert!(matches!(
            t.insert(1, vec![Clause::from_dimacs(&[3])]),
            Err(CnfError::VarOutOfRange { .. })
        ));
        t.insert(1, vec![]).unwrap();
        assert!(matches!(
            t.insert(1, vec![]),
            Err(CnfError::DuplicateCheckpoint(1))
        ));
    }
}
