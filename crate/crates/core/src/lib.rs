//! Relevance-zone based AND-OR search for Go life-and-death and Hex
//! connection problems.

pub mod bench;
pub mod benson;
pub mod board;
pub mod error;
pub mod grid;
pub mod hexgame;
pub mod oracle;
pub mod problem;
pub mod rules;
pub mod rzone;
pub mod solver;
pub mod zone;

pub use benson::{goal_status, GoGoal, GoalStatus};
pub use board::{Block, Board, PassPolicy, Position};
pub use error::{Result, RzsError};
pub use grid::{CellState, Grid, Move, Player};
pub use hexgame::{HexGoal, HexPosition, HexTarget, Side};
pub use zone::{Bits, Zone, ZonePattern};
pub use oracle::{oracle_solve, OracleResult};
pub use problem::{parse_problem, GameKind, Instance, ProblemSpec};
pub use rules::{GoRules, HexRules, Rules};
pub use solver::{achieve_goal, SolveResult, SolverConfig, Status};
