use thiserror::Error;

/// Failures raised by the geometric kernel, table constructors and the
/// billiard dynamics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("homogeneous triple has all coordinates zero")]
    ZeroTriple,
    #[error("cannot join a point with itself")]
    DegenerateJoin,
    #[error("cannot meet a line with itself")]
    DegenerateMeet,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("transversal passes through the vertex of the pencil")]
    BadTransversal,
    #[error("reference lines of the pencil coincide")]
    DegeneratePencil,
    #[error("line span is too poorly conditioned to evaluate")]
    IllConditioned,
    #[error("cross-ratio is indeterminate (0/0)")]
    IndeterminateCrossRatio,

    #[error("table needs at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("vertices are collinear")]
    CollinearVertices,
    #[error("vertices {first}, {second}, {third} are collinear")]
    CollinearConsecutiveVertices { first: usize, second: usize, third: usize },
    #[error("consecutive vertices {index} and {next} coincide")]
    CoincidentVertices { index: usize, next: usize },
    #[error("origin lies on the supporting line of edge {edge}")]
    OriginOnEdge { edge: usize },
    #[error("field pivot of edge {edge} lies on its supporting line")]
    PivotOnEdge { edge: usize },
    #[error("degenerate table: {0}")]
    DegenerateTable(&'static str),
    #[error("regular {n}-gon has no exact coordinates in this scalar type")]
    NotExactlyRepresentable { n: usize },

    #[error("point is not on the supporting line of edge {edge}")]
    PointOffEdge { edge: usize },
    #[error("point coincides with the field pivot of edge {edge}")]
    FieldSingular { edge: usize },
    #[error("incoming line does not pass through the bounce point")]
    LineMissesPoint,
    #[error("chord endpoints coincide")]
    ChordDegenerate,
    #[error("outgoing line coincides with the supporting line of edge {edge}")]
    OrbitCollapse { edge: usize },
    #[error("chord parameter must lie strictly between 0 and 1")]
    InvalidChord,
    #[error("number of steps must be positive")]
    InvalidSteps,
    #[error("period {m} is not a positive multiple of the edge count {n}")]
    NotMultipleOfN { m: usize, n: usize },
    #[error("grid must have at least 2 cells per side")]
    InvalidGrid,
    #[error("orbit index {index} out of range")]
    IndexOutOfRange { index: i64 },

    #[error("operation requires a centrally-projective table")]
    WrongFamily,
    #[error("point at infinity where an affine point is required")]
    InfinitePoint,
    #[error("outer orbit starts at a dual vertex")]
    StartsAtVertex,
    #[error("chord {index} passes through the duality center")]
    ChordThroughCenter { index: usize },

    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
