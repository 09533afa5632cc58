use alloc::string::String;

/// Errors raised by graph construction and by every energy computation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("graph is not connected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(String, String),
    #[error("edge {0}-{1} has nonpositive or non-finite length {2}")]
    NonpositiveLength(String, String, f64),
    #[error("vertex {0} has negative or non-finite measure {1}")]
    NegativeMeasure(String, f64),
    #[error("total measure must be positive")]
    ZeroTotalMeasure,
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("empty sample")]
    EmptySample,
    #[error("radii must be positive and span at least a factor of 2")]
    DegenerateRadii,

    #[error("poles coincide")]
    SamePoles,
    #[error("truncation parameter L must be >= 1, got {0}")]
    InvalidTruncation(f64),

    #[error("pole {0} violates the one-hop interior condition")]
    PoleNotInterior(String),
    #[error("set does not separate the poles")]
    NotSeparating,
    #[error("level set too close to a pole")]
    LevelTooClose,
    #[error("graph has {vertices} vertices, exhaustive search limit is {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("empty vertex set")]
    EmptySet,
    #[error("covering scale {delta} is below the smallest local scale {min_scale}")]
    DeltaTooSmall { delta: f64, min_scale: f64 },
    #[error("empty radius schedule")]
    EmptySchedule,
    #[error("poles are not connected inside the region")]
    NotConnectedInRegion,
    #[error("no valid separating set: the one-hop balls of the poles touch")]
    NoValidSeparator,

    #[error("test function is constant")]
    ConstantFunction,
    #[error("ball around {0} has zero measure")]
    EmptyBall(String),
    #[error("function has {got} values, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("bad parameter: {0}")]
    BadParam(String),
}

pub type Result<T> = core::result::Result<T, Error>;
