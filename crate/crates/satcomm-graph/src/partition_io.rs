//! Partition files: one line per node, `<node-id> <community-id>`.
//! Variable nodes are bare 1-based integers; clause nodes are `c<k>` with a
//! 1-based clause index.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::{GraphError, Partition};

/// Writes a partition over variables 1..=n (VIG node i is variable i+1).
pub fn write_var_partition(path: impl AsRef<Path>, p: &Partition) -> Result<(), GraphError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for (node, &label) in p.labels().iter().enumerate() {
        writeln!(out, "{} {}", node + 1, label)?;
    }
    Ok(())
}

/// Writes a partition over a CVIG's unified nodes: variables first, then
/// clause nodes as `c<k>`.
pub fn write_cvig_partition(
    path: impl AsRef<Path>,
    p: &Partition,
    left_count: usize,
) -> Result<(), GraphError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for (node, &label) in p.labels().iter().enumerate() {
        if node < left_count {
            writeln!(out, "{} {}", node + 1, label)?;
        } else {
            writeln!(out, "c{} {}", node - left_count + 1, label)?;
        }
    }
    Ok(())
}

/// Reads a variable partition back. Clause-node lines (`c<k> ...`) are
/// ignored, so a CVIG partition file restricts cleanly to its variables.
/// Every variable 1..=num_vars must be labeled exactly once.
pub fn read_var_partition(
    path: impl AsRef<Path>,
    num_vars: u32,
) -> Result<Partition, GraphError> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut labels: Vec<Option<u32>> = vec![None; num_vars as usize];
    for (idx, line) in file.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| GraphError::BadPartitionFile {
            line: idx + 1,
            msg: msg.to_string(),
        };
        let (node, label) = line.split_once(char::is_whitespace).ok_or_else(|| {
            bad("expected `<node-id> <community-id>`")
        })?;
        if node.starts_with('c') {
            continue;
        }
        let var: u32 = node.parse().map_err(|_| bad("bad node id"))?;
        if var < 1 || var > num_vars {
            return Err(bad(&format!("variable {var} out of range 1..={num_vars}")));
        }
        let label: u32 = label.trim().parse().map_err(|_| bad("bad community id"))?;
        let slot = &mut labels[(var - 1) as usize];
        if slot.is_some() {
            return Err(bad(&format!("variable {var} labeled twice")));
        }
        *slot = Some(label);
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or(GraphError::UnlabeledVariable(i as u32 + 1)))
        .collect::<Result<Vec<u32>, _>>()?;
    Ok(Partition::from_labels(labels))
}
