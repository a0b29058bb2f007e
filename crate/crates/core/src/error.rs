use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {n} out of range (supported: {min}..={max})")]
    DimensionOutOfRange { n: u32, min: u32, max: u32 },

    #[error("vertex bits {bits:#x} do not fit in dimension {n}")]
    VertexOutOfRange { bits: u32, n: u32 },

    #[error("landmark set is empty")]
    EmptyLandmarks,

    #[error("duplicate landmark {0}")]
    DuplicateLandmark(String),

    #[error("level {k} out of range for dimension {n} (valid: {min}..={max})")]
    LevelOutOfRange { k: u32, n: u32, min: u32, max: u32 },

    #[error("invalid token {token:?} at position {position} (offset {offset}): {reason}")]
    Parse {
        token: String,
        position: usize,
        offset: usize,
        reason: String,
    },

    #[error("{name}: parameter {param}={value} out of range (valid: {valid})")]
    ConstructionRange {
        name: &'static str,
        param: &'static str,
        value: u32,
        valid: &'static str,
    },

    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),

    #[error("landmark set does not resolve the graph")]
    NotResolving,

    #[error("exhaustive search on dimension {n} exceeds the cost guard (n <= {guard}); pass force to override")]
    SearchGuard { n: u32, guard: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph format error on line {line}: {message}")]
    GraphFormat { line: usize, message: String },

    #[error("vertex index {index} out of range for graph with {count} vertices")]
    VertexIndex { index: usize, count: usize },

    #[error("graph is disconnected")]
    Disconnected,
}
