use std::io;

use thiserror::Error;

/// Parse failure in one of the text formats, with a 1-based line number
/// (0 when the problem is not tied to a single line).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: String) -> Self {
        ParseError { line, msg }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate triple ({0}, {1}, {2})")]
    DegenerateTriple(usize, usize, usize),
    #[error("invalid symmetry: {0}")]
    InvalidSymmetry(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("symmetry breaking unsupported for this shape")]
    SymmetryBreakingUnsupported,
    #[error("unparseable solver output: {0}")]
    SolverOutput(String),
    #[error("solver failed with exit code {code:?}: {stderr}")]
    SolverFailed { code: Option<i32>, stderr: String },
    #[error("inconsistent model: {0}")]
    InconsistentModel(String),
    #[error("collinear targets unsupported")]
    CollinearTarget,
    #[error("inconsistent collinearity: {0}")]
    InconsistentCollinearity(String),
    #[error("general position required")]
    GeneralPositionRequired,
    #[error("duplicate points {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("assignment is not invariant under the symmetry")]
    AsymmetricAssignment,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
