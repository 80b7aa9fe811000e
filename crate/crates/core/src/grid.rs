//! Board coordinates, players and cell states.

use std::fmt;
use std::str::FromStr;

use crate::error::RzsError;

pub const MIN_SIZE: usize = 2;
pub const MAX_SIZE: usize = 19;

/// Column letters in Go convention: the letter `I` is skipped.
const COLUMNS: &[u8] = b"ABCDEFGHJKLMNOPQRST";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Black,
    White,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Black => Player::White,
            Player::White => Player::Black,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Player::Black => 'X',
            Player::White => 'O',
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Black => 0,
            Player::White => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Black => "B",
            Player::White => "W",
        })
    }
}

impl FromStr for Player {
    type Err = RzsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "B" | "b" | "X" | "x" | "black" | "Black" => Ok(Player::Black),
            "W" | "w" | "O" | "o" | "white" | "White" => Ok(Player::White),
            other => Err(RzsError::Parse(format!("unknown player `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellState {
    Empty,
    Black,
    White,
}

impl CellState {
    pub fn of(player: Player) -> CellState {
        match player {
            Player::Black => CellState::Black,
            Player::White => CellState::White,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            CellState::Empty => '.',
            CellState::Black => 'X',
            CellState::White => 'O',
        }
    }
}

/// A grid (intersection or cell). Row 0 is the bottom row, rendered as `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    // (row, col) field order gives the row-major ordering used for tie-breaks.
    row: u8,
    col: u8,
}

impl Grid {
    pub fn new(col: usize, row: usize) -> Grid {
        debug_assert!(col < MAX_SIZE && row < MAX_SIZE);
        Grid {
            row: row as u8,
            col: col as u8,
        }
    }

    pub fn col(self) -> usize {
        self.col as usize
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    /// Bit index on a board of the given size.
    pub fn index(self, size: usize) -> usize {
        self.row() * size + self.col()
    }

    pub fn from_index(idx: usize, size: usize) -> Grid {
        Grid::new(idx % size, idx / size)
    }

    pub fn on_board(self, size: usize) -> bool {
        self.col() < size && self.row() < size
    }

    /// Parses `E2`-style names, checking the result fits on the board.
    pub fn parse(s: &str, size: usize) -> Result<Grid, RzsError> {
        let g: Grid = s.parse()?;
        if g.on_board(size) {
            Ok(g)
        } else {
            Err(RzsError::OffBoard(s.to_string()))
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", COLUMNS[self.col()] as char, self.row() + 1)
    }
}

impl FromStr for Grid {
    type Err = RzsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| RzsError::Parse("empty grid name".into()))?
            .to_ascii_uppercase();
        let col = COLUMNS
            .iter()
            .position(|&c| c as char == letter)
            .ok_or_else(|| RzsError::Parse(format!("bad column in `{s}`")))?;
        let row: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RzsError::Parse(format!("bad row in `{s}`")))?;
        if row == 0 || row > MAX_SIZE {
            return Err(RzsError::Parse(format!("bad row in `{s}`")));
        }
        Ok(Grid::new(col, row - 1))
    }
}

/// A move: a stone placement or a pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Place(Grid),
    Pass,
}

impl Move {
    pub fn grid(self) -> Option<Grid> {
        match self {
            Move::Place(g) => Some(g),
            Move::Pass => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Place(g) => write!(f, "{g}"),
            Move::Pass => f.write_str("pass"),
        }
    }
}

impl FromStr for Move {
    type Err = RzsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("pass") {
            Ok(Move::Pass)
        } else {
            Ok(Move::Place(s.parse()?))
        }
    }
}

pub fn check_size(size: usize) -> Result<(), RzsError> {
    if (MIN_SIZE..=MAX_SIZE).contains(&size) {
        Ok(())
    } else {
        Err(RzsError::BadSize(size))
    }
}
