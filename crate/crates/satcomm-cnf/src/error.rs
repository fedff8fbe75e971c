use thiserror::Error;

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("empty DIMACS input")]
    EmptyInput,
    #[error("malformed DIMACS header: {0}")]
    BadHeader(String),
    #[error("bad literal token `{0}`")]
    BadLiteral(String),
    #[error("clause not terminated by 0 at end of input")]
    UnterminatedClause,
    #[error("variable {var} out of range 1..={num_vars}")]
    VarOutOfRange { var: u32, num_vars: u32 },
    #[error("invalid generator config: {0}")]
    BadGeneratorConfig(String),
    #[error("learnt-trace file {0}: missing `c checkpoint <X>` comment")]
    MissingCheckpoint(String),
    #[error("learnt-trace checkpoint mismatch in {file}: comment says {comment}, name says {name}")]
    CheckpointMismatch {
        file: String,
        comment: u64,
        name: u64,
    },
    #[error("duplicate learnt-trace checkpoint {0}")]
    DuplicateCheckpoint(u64),
    #[error("learnt-trace files disagree on variable count ({0} vs {1})")]
    TraceVarCountMismatch(u32, u32),
    #[error("no learnt-trace files matching `*.learnt.<X>.cnf` under {0}")]
    NoTraceFiles(String),
    #[error("learnt-trace files for several bases under {dir}: {bases:?}")]
    AmbiguousTraceBase { dir: String, bases: Vec<String> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
