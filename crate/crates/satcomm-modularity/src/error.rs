use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModularityError {
    #[error("partition labels {partition} nodes but the graph has {graph}")]
    PartitionSize { partition: usize, graph: usize },
    #[error("clause variable {var} exceeds the formula's {num_vars} variables")]
    VarOutOfRange { var: u32, num_vars: u32 },
    #[error("graph has {nodes} nodes, exhaustive search is capped at {max}")]
    TooManyNodes { nodes: usize, max: usize },
}
