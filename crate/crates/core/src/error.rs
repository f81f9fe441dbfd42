use std::fmt;

use thiserror::Error;

use crate::pattern::Cell;

/// Position inside an expression or a matrix file (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: Position, message: String },

    #[error("variable x{index} out of range for order {order} at {position}")]
    VariableOutOfRange {
        index: u64,
        order: usize,
        position: Position,
    },

    #[error("window {lo}..{hi} out of range for order {order}")]
    WindowOutOfRange { lo: usize, hi: usize, order: usize },

    #[error("subdiagonal {k} out of range for order {order}")]
    SubdiagonalOutOfRange { k: usize, order: usize },

    #[error("cofactor oracle limited to order {limit}, got {order}")]
    OracleTooLarge { order: usize, limit: usize },

    #[error("nilpotency queried on a matrix containing x{0}")]
    ContainsVariable(u32),

    #[error("matrix is not unit lower Hessenberg")]
    NotUlh,

    #[error("variable x{0} does not occur in the matrix")]
    MissingVariable(u32),

    #[error("variable x{index} occurs at both {first} and {second}")]
    DuplicateVariable {
        index: u32,
        first: Cell,
        second: Cell,
    },

    #[error("variable x{index} is embedded in a compound entry at {cell}")]
    CompoundVariable { index: u32, cell: Cell },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("pattern is not in family {0}")]
    NotInFamily(&'static str),

    #[error("matrix is outside B~: {0}")]
    OutsideBTilde(String),

    #[error("matrix is not a ULH superpattern of the base Fiedler matrix: {0}")]
    NotSuperpattern(String),

    #[error("checkpoint {checkpoint} exceeds order {order}")]
    CheckpointOutOfRange { checkpoint: usize, order: usize },

    #[error("row {row} already holds values inconsistent with the nilpotent completion")]
    InconsistentCheckpointRow { row: usize },

    #[error("test does not apply: {0}")]
    NotApplicable(String),

    #[error("digraph on {order} vertices exceeds the backtracking bound {limit}")]
    GraphTooLarge { order: usize, limit: usize },

    #[error("search order {0} outside the supported range 2..=6")]
    SearchOrderOutOfRange(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that signal a bug or corrupted intermediate state rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
