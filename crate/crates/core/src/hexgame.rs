//! Hex on an `n x n` parallelogram. Cells at `(c, r)` touch `(c±1, r)`,
//! `(c, r±1)`, `(c+1, r+1)` and `(c-1, r-1)`. White owns the bottom and top
//! sides, Black the left and right sides. Stones never leave the board, so
//! zones need no dilation.

use std::fmt;
use std::str::FromStr;

use crate::benson::GoalStatus;
use crate::board::{stone_key, turn_key, Board};
use crate::error::{Result, RzsError};
use crate::grid::{CellState, Grid, Player};
use crate::zone::{Bits, Zone};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Bottom,
    Top,
    Left,
    Right,
}

impl Side {
    pub fn owner(self) -> Player {
        match self {
            Side::Bottom | Side::Top => Player::White,
            Side::Left | Side::Right => Player::Black,
        }
    }

    pub fn cells(self, size: usize) -> Bits {
        let mut b = Bits::EMPTY;
        for k in 0..size {
            let g = match self {
                Side::Bottom => Grid::new(k, 0),
                Side::Top => Grid::new(k, size - 1),
                Side::Left => Grid::new(0, k),
                Side::Right => Grid::new(size - 1, k),
            };
            b.set(g.index(size));
        }
        b
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Bottom => "bottom",
            Side::Top => "top",
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = RzsError;

    fn from_str(s: &str) -> Result<Side> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bottom" | "lower" | "south" => Ok(Side::Bottom),
            "top" | "upper" | "north" => Ok(Side::Top),
            "left" | "west" => Ok(Side::Left),
            "right" | "east" => Ok(Side::Right),
            other => Err(RzsError::Parse(format!("unknown side `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HexTarget {
    Side(Side),
    Stones(Vec<Grid>),
}

/// Connect every crucial stone to the target with one block of `player`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HexGoal {
    pub player: Player,
    pub crucial: Vec<Grid>,
    pub target: HexTarget,
}

impl HexGoal {
    pub fn describe(&self) -> String {
        let names: Vec<String> = self.crucial.iter().map(|g| g.to_string()).collect();
        let target = match &self.target {
            HexTarget::Side(s) => s.to_string(),
            HexTarget::Stones(gs) => gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","),
        };
        format!(
            "hex-connect player={} crucial={} target={target}",
            self.player,
            names.join(",")
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HexPosition {
    board: Board,
    to_move: Player,
    hash: u64,
}

impl HexPosition {
    pub fn new(board: Board, to_move: Player) -> HexPosition {
        HexPosition {
            hash: board.stones_hash() ^ turn_key(to_move),
            board,
            to_move,
        }
    }

    pub fn empty(size: usize, to_move: Player) -> Result<HexPosition> {
        Ok(HexPosition::new(Board::new(size)?, to_move))
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn size(&self) -> usize {
        self.board.size()
    }

    pub fn hash(&self) -> u64 {
        self.hash
    }

    pub fn hash_from_scratch(&self) -> u64 {
        self.board.stones_hash() ^ turn_key(self.to_move)
    }

    /// Places a stone for the player to move; nothing else on the board changes.
    pub fn play(&self, g: Grid) -> Result<HexPosition> {
        if !g.on_board(self.size()) {
            return Err(RzsError::OffBoard(g.to_string()));
        }
        if self.board.get(g) != CellState::Empty {
            return Err(RzsError::OccupiedGrid(g.to_string()));
        }
        let me = self.to_move;
        let mut board = self.board;
        board.set(g, CellState::of(me));
        Ok(HexPosition {
            board,
            to_move: me.opponent(),
            hash: self.hash
                ^ stone_key(me, g.index(self.size()))
                ^ turn_key(me)
                ^ turn_key(me.opponent()),
        })
    }

    pub fn legal_moves(&self) -> Vec<Grid> {
        self.board.grids_of(self.board.empty_bits())
    }
}

impl fmt::Debug for HexPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}\n{} to move (hex)", self.board, self.to_move)
    }
}

fn grid_bits(grids: &[Grid], size: usize) -> Bits {
    grids
        .iter()
        .fold(Bits::EMPTY, |acc, g| acc | Bits::single(g.index(size)))
}

pub fn hex_goal_status(p: &HexPosition, goal: &HexGoal) -> GoalStatus {
    let n = p.size();
    let geo = p.board().geometry();
    let own = p.board().stones(goal.player);
    let crucial = grid_bits(&goal.crucial, n);
    if crucial.is_empty() || !crucial.is_subset(&own) {
        return GoalStatus::Failed;
    }
    let target_fn = |set: Bits| match &goal.target {
        HexTarget::Side(s) => set.intersects(&s.cells(n)),
        HexTarget::Stones(gs) => {
            let t = grid_bits(gs, n);
            !t.is_empty() && t.is_subset(&set)
        }
    };
    let seed = Bits::single(crucial.lowest().expect("non-empty"));

    let block = geo.flood(seed, own, true);
    if crucial.is_subset(&block) && target_fn(block) {
        return GoalStatus::Achieved(Zone::from_bits(n, block));
    }

    let reachable = geo.flood(seed, own | p.board().empty_bits(), true);
    if !crucial.is_subset(&reachable) || !target_fn(reachable) {
        return GoalStatus::Failed;
    }
    GoalStatus::Undecided
}

/// Hex has no captures and no forbidden moves.
pub fn hex_dilate(z: &Zone) -> Zone {
    *z
}
