use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("partition labels {partition} nodes but the graph has {graph}")]
    PartitionSize { partition: usize, graph: usize },
    #[error("bad partition file, line {line}: {msg}")]
    BadPartitionFile { line: usize, msg: String },
    #[error("partition file leaves variable {0} unlabeled")]
    UnlabeledVariable(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
