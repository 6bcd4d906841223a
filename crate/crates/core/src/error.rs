use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("face {face} references vertex {index}, but the solid has {count} vertices")]
    VertexOutOfRange {
        face: usize,
        index: usize,
        count: usize,
    },
    #[error("face {face} is degenerate: {reason}")]
    DegenerateFace { face: usize, reason: &'static str },
    #[error("edge ({a}, {b}) belongs to {count} face(s), expected 2")]
    NonManifoldEdge { a: usize, b: usize, count: usize },
    #[error("edge ({a}, {b}) is traversed in the same direction by faces {f} and {g}")]
    InconsistentOrientation {
        a: usize,
        b: usize,
        f: usize,
        g: usize,
    },
    #[error("Euler relation violated: V - E + F = {0}, expected 2")]
    Euler(i64),
    #[error("face adjacency graph is disconnected")]
    Disconnected,
    #[error("face index {face} out of range (solid has {count} faces)")]
    FaceOutOfRange { face: usize, count: usize },
    #[error("centroid of face {0} coincides with the solid centroid; no peeling axis")]
    DegenerateAxis(usize),
    #[error("faces {f1} and {f2} are not adjacent")]
    NotAdjacent { f1: usize, f2: usize },
    #[error("side plane is degenerate: face centroid is collinear with the axis")]
    DegeneratePlane,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("unknown solid `{0}`")]
    UnknownSolid(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid polyhedron JSON: {0}")]
    Json(String),
    #[error("peel sequence is empty")]
    EmptySequence,
    #[error("peel sequence breaks adjacency between faces {0} and {1}")]
    BrokenChain(usize, usize),
    #[error("step {step} out of range, expected 1..{len}")]
    StepOutOfRange { step: usize, len: usize },
    #[error("hinge between faces {0} and {1} has zero length")]
    CollapsedHinge(usize, usize),
    #[error("peel sequence is incomplete ({selected} of {total} faces)")]
    IncompleteSequence { selected: usize, total: usize },
    #[error("Tutte system is singular")]
    SingularSystem,
}

pub type Result<T> = std::result::Result<T, Error>;
