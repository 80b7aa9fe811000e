//! The game interface the solver and the oracle search over.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Debug;
use std::hash::{Hash, Hasher};

use crate::benson::{goal_status, GoGoal, GoalStatus};
use crate::board::{Board, PassPolicy, Position};
use crate::error::{Result, RzsError};
use crate::grid::{Move, Player};
use crate::hexgame::{hex_dilate, hex_goal_status, HexGoal, HexPosition};
use crate::rzone;
use crate::zone::{Zone, ZonePattern};

/// Rules plus goal for one problem. The OR-player tries to reach the goal.
pub trait Rules: Sync {
    type Pos: Copy + Debug + Send + Sync + PartialEq;

    fn or_player(&self) -> Player;
    fn board<'a>(&self, p: &'a Self::Pos) -> &'a Board;
    fn to_move(&self, p: &Self::Pos) -> Player;
    fn hash(&self, p: &Self::Pos) -> u64;
    fn legal_moves(&self, p: &Self::Pos) -> Vec<Move>;
    fn play(&self, p: &Self::Pos, m: Move) -> Result<Self::Pos>;
    fn goal_status(&self, p: &Self::Pos) -> GoalStatus;
    fn dilate_or(&self, p: &Self::Pos, m: Move, z_u: &Zone) -> Result<Zone>;
    fn dilate_and(&self, p: &Self::Pos, z_u: &Zone) -> Zone;
    /// Builds a position from a board and a player to move, if legal.
    fn make(&self, board: Board, to_move: Player) -> Option<Self::Pos>;
    /// Stable identity of the goal and rule flags, for table keys.
    fn goal_id(&self) -> u64;
    fn describe(&self) -> String;

    /// How the OR-player may answer an AND move that has no matching child
    /// in a proof tree. Only Hex allows this: an extra OR stone never hurts,
    /// so the OR-player may simply ignore the move.
    fn ignore_move(&self, _p: &Self::Pos) -> Option<Self::Pos> {
        None
    }

    /// The same board with the other side to move.
    fn skip_turn(&self, p: &Self::Pos) -> Self::Pos;

    fn size(&self, p: &Self::Pos) -> usize {
        self.board(p).size()
    }

    fn pattern(&self, p: &Self::Pos, z: &Zone) -> ZonePattern {
        self.board(p).zone_pattern(z)
    }

    fn is_or_turn(&self, p: &Self::Pos) -> bool {
        self.to_move(p) == self.or_player()
    }
}

fn stable_id<T: Hash>(tag: &str, t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    tag.hash(&mut h);
    t.hash(&mut h);
    h.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoRules {
    pub goal: GoGoal,
    pub pass: PassPolicy,
}

impl GoRules {
    /// Default pass policy: only the AND-player may pass.
    pub fn new(goal: GoGoal) -> GoRules {
        let pass = PassPolicy::and_only(goal.defender());
        GoRules { goal, pass }
    }

    pub fn with_pass(goal: GoGoal, pass: PassPolicy) -> GoRules {
        GoRules { goal, pass }
    }

    pub fn killall(defender: Player) -> GoRules {
        GoRules::new(GoGoal::KillAllDefense { defender })
    }
}

impl Rules for GoRules {
    type Pos = Position;

    fn or_player(&self) -> Player {
        self.goal.defender()
    }

    fn board<'a>(&self, p: &'a Position) -> &'a Board {
        p.board()
    }

    fn to_move(&self, p: &Position) -> Player {
        p.to_move()
    }

    fn hash(&self, p: &Position) -> u64 {
        p.hash()
    }

    fn legal_moves(&self, p: &Position) -> Vec<Move> {
        p.legal_moves(self.pass)
    }

    /// The pass policy only limits move generation; a pass is always
    /// playable, which the search uses when a side has no placement left.
    fn play(&self, p: &Position, m: Move) -> Result<Position> {
        p.play(m)
    }

    fn goal_status(&self, p: &Position) -> GoalStatus {
        goal_status(p, &self.goal)
    }

    fn dilate_or(&self, p: &Position, m: Move, z_u: &Zone) -> Result<Zone> {
        rzone::dilate_or(p, m, z_u)
    }

    fn dilate_and(&self, p: &Position, z_u: &Zone) -> Zone {
        rzone::dilate_and(p, z_u)
    }

    fn make(&self, board: Board, to_move: Player) -> Option<Position> {
        Position::new(board, to_move).ok()
    }

    fn skip_turn(&self, p: &Position) -> Position {
        p.play(Move::Pass).expect("pass is always playable")
    }

    fn goal_id(&self) -> u64 {
        stable_id("go", self)
    }

    fn describe(&self) -> String {
        format!(
            "go {} pass-black={} pass-white={}",
            self.goal.describe(),
            self.pass.black,
            self.pass.white
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HexRules {
    pub goal: HexGoal,
}

impl HexRules {
    pub fn new(goal: HexGoal) -> HexRules {
        HexRules { goal }
    }
}

impl Rules for HexRules {
    type Pos = HexPosition;

    fn or_player(&self) -> Player {
        self.goal.player
    }

    fn board<'a>(&self, p: &'a HexPosition) -> &'a Board {
        p.board()
    }

    fn to_move(&self, p: &HexPosition) -> Player {
        p.to_move()
    }

    fn hash(&self, p: &HexPosition) -> u64 {
        p.hash()
    }

    fn legal_moves(&self, p: &HexPosition) -> Vec<Move> {
        p.legal_moves().into_iter().map(Move::Place).collect()
    }

    fn play(&self, p: &HexPosition, m: Move) -> Result<HexPosition> {
        match m {
            Move::Place(g) => p.play(g),
            Move::Pass => Err(RzsError::IllegalMove("pass".into())),
        }
    }

    fn goal_status(&self, p: &HexPosition) -> GoalStatus {
        hex_goal_status(p, &self.goal)
    }

    fn dilate_or(&self, p: &HexPosition, m: Move, z_u: &Zone) -> Result<Zone> {
        let g = m
            .grid()
            .filter(|_| self.play(p, m).is_ok())
            .ok_or_else(|| RzsError::IllegalMove(m.to_string()))?;
        let mut z = hex_dilate(z_u);
        z.insert(g);
        Ok(z)
    }

    fn dilate_and(&self, _p: &HexPosition, z_u: &Zone) -> Zone {
        hex_dilate(z_u)
    }

    fn make(&self, board: Board, to_move: Player) -> Option<HexPosition> {
        Some(HexPosition::new(board, to_move))
    }

    fn skip_turn(&self, p: &HexPosition) -> HexPosition {
        HexPosition::new(*p.board(), p.to_move().opponent())
    }

    fn goal_id(&self) -> u64 {
        stable_id("hex", self)
    }

    fn describe(&self) -> String {
        format!("hex {}", self.goal.describe())
    }

    fn ignore_move(&self, p: &HexPosition) -> Option<HexPosition> {
        Some(self.skip_turn(p))
    }
}
