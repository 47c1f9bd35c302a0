use thiserror::Error;

use crate::groupoid::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composite of consecutive maps is nonzero at entry ({row}, {col})")]
    CompositionNonzero { row: usize, col: usize },
    #[error("coefficient modulus must be at least 2, got {0}")]
    BadModulus(i64),
    #[error("nerve of degree {degree} has {count} tuples, above the cap of {cap}")]
    DegreeTooLarge { degree: usize, count: usize, cap: usize },
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("depth {depth} with base {p} exceeds the cap of {cap} points")]
    DepthTooLarge { p: usize, depth: usize, cap: usize },
    #[error("window with {levels} levels over {arrows} arrows exceeds the cap of {cap}")]
    WindowTooLarge { levels: usize, arrows: usize, cap: usize },
    #[error("guard {guard} too small: need guard >= {required} and window radius > guard (radius {radius})")]
    GuardTooSmall {
        guard: usize,
        required: usize,
        radius: usize,
    },
    #[error("malformed Bratteli diagram: {0}")]
    MalformedDiagram(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("map is not surjective: point {0} has an empty fiber")]
    NotSurjective(usize),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(Violation),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("stage {stage} is beyond the search bound {bound}")]
    StageBoundExceeded { stage: usize, bound: usize },
    #[error("vector is not in the image of the matrix")]
    NoSolution,
}
