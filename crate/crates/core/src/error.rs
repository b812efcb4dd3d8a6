use thiserror::Error;

use crate::geom::Point;

/// Errors raised anywhere in the counting pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("duplicate point {point:?} at indices {first} and {second}")]
    DuplicatePoint {
        point: Point,
        first: usize,
        second: usize,
    },
    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{n} points exceed the edge-bitset limit of {max}")]
    TooManyPoints { n: usize, max: usize },
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge ({0}, {0}) is a loop")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edges ({0}, {1}) and ({2}, {3}) cross")]
    EdgesCross(usize, usize, usize, usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("graphs are defined over different point sets")]
    MismatchedPointSet,
    #[error("vertex {0} is not an interior point")]
    NotInterior(usize),
    #[error("graph is not a triangulation: {0}")]
    NotTriangulation(String),
    #[error("edge ({0}, {1}) is not flippable")]
    NotFlippable(usize, usize),
    #[error("graph is not a perfect matching")]
    NotPerfectMatching,
    #[error("graph is not a subgraph of the triangulation")]
    NotSubgraph,
    #[error("|det| = {0} is not a perfect square; the orientation is not Pfaffian")]
    NotPerfectSquare(String),
    #[error("edge weight for ({0}, {1}) is missing or not positive")]
    BadWeight(usize, usize),
    #[error("polygon is not simple: {0}")]
    NotSimple(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("argument out of domain: {0}")]
    DomainError(String),
    #[error("no sign change in [{lo}, {hi}]")]
    NoRootInBracket { lo: f64, hi: f64 },
    #[error("scale {0} is too small for the requested configuration")]
    InfeasibleScale(i64),
    #[error("point is not strictly outside the convex hull")]
    NotExternal,
    #[error("gave up after {0} sampling attempts")]
    ExhaustedAttempts(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
