use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RzsError {
    #[error("board size {0} outside 2..=19")]
    BadSize(usize),
    #[error("grid {0} is off the board")]
    OffBoard(String),
    #[error("grid {0} is occupied")]
    OccupiedGrid(String),
    #[error("move at {0} is suicide")]
    SuicideMove(String),
    #[error("illegal move {0}")]
    IllegalMove(String),
    #[error("zones have different board sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("leaf zone requested for an empty set of unconditionally alive blocks")]
    EmptyUcaSet,
    #[error("move {0} is not in the must-play region")]
    MoveNotInRegion(String),
    #[error("position does not match the zone pattern of the proof")]
    PatternMismatch,
    #[error("malformed SGF at byte {offset}: {msg}")]
    MalformedSgf { offset: usize, msg: String },
    #[error("inconsistent setup: {0}")]
    InconsistentSetup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, RzsError>;
