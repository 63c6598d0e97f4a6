use thiserror::Error;

/// Errors raised by the library operations.
///
/// Validators never return these for ordinary rule violations; they produce a
/// [`ValidationReport`](crate::report::ValidationReport) instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex set is not sorted and deduplicated: {0:?}")]
    UnsortedVertexSet(Vec<usize>),

    #[error("enumeration refused: {target}^{source_n} candidate maps exceeds the cap of {cap}")]
    SizeCap { source_n: usize, target: usize, cap: u128 },

    #[error("source graph has no vertices")]
    EmptySource,

    #[error("pin is not an injective partial map into the target: {0}")]
    BadPin(String),

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph is not a forest")]
    NotAForest,

    #[error("graph has no edges")]
    Edgeless,

    #[error("target has no edges")]
    TargetEdgeless,

    #[error("bag index {bag} out of range ({count} bags)")]
    BagOutOfRange { bag: usize, count: usize },

    #[error("bag family {0:?} does not induce a subtree of the decomposition tree")]
    NotASubtree(Vec<usize>),

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("vertices {0:?} are all contained in a single bag")]
    ContainedInSingleBag(Vec<usize>),

    #[error("vertex {0} is not covered by any bag")]
    Uncovered(usize),

    #[error("invalid spanning tree of the line graph: {0}")]
    BadSpanningTree(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("index set {sub:?} is not a subset of {of:?}")]
    NotSubset { sub: Vec<usize>, of: Vec<usize> },

    #[error("marginals disagree at {assignment:?} on {shared:?}: {left} vs {right}")]
    MarginalMismatch {
        shared: Vec<usize>,
        assignment: Vec<usize>,
        left: String,
        right: String,
    },

    #[error("marginals disagree across tree edge ({a}, {b}) at {assignment:?} on {shared:?}: {left} vs {right}")]
    EdgeMarginalMismatch {
        a: usize,
        b: usize,
        shared: Vec<usize>,
        assignment: Vec<usize>,
        left: String,
        right: String,
    },

    #[error("bag {bag} distribution has index set {found:?}, expected {expected:?}")]
    BagIndexMismatch {
        bag: usize,
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("decomposition levels differ: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("degree condition fails: max degree {max_degree} * {n} > 4 * {edges}")]
    DegreeCondition { max_degree: usize, n: usize, edges: usize },

    #[error("support atom {0:?} is not a homomorphism")]
    NotAHomomorphism(Vec<usize>),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
