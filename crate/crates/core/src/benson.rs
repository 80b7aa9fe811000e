//! Benson's unconditional life, leaf relevance zones and the Go goal test.
//!
//! A region is a maximal 4-connected set of grids not occupied by the
//! perspective player. A region is vital to a block when every empty grid of
//! the region is a liberty of that block. A set of blocks is unconditionally
//! alive (UCA) when each block keeps two vital regions that are enclosed by
//! blocks of the set.

use crate::board::{Block, Board, Position};
use crate::error::{Result, RzsError};
use crate::grid::{Grid, Player};
use crate::zone::{Bits, Zone};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub owner: Player,
    pub grids: Bits,
    /// Stones of the perspective player's blocks adjacent to the region.
    pub bordering: Bits,
}

impl Region {
    pub fn empty_grids(&self, board: &Board) -> Bits {
        self.grids & board.empty_bits()
    }

    pub fn is_vital_to(&self, block: &Block, board: &Board) -> bool {
        let empties = self.empty_grids(board);
        !empties.is_empty() && empties.is_subset(&block.liberties)
    }
}

pub fn regions(b: &Board, player: Player) -> Vec<Region> {
    let geo = b.geometry();
    let own = b.stones(player);
    geo.components(geo.all & !own, false)
        .into_iter()
        .map(|grids| {
            let touching = geo.neighbors4(grids) & own;
            let bordering = b
                .blocks_of(player)
                .into_iter()
                .filter(|bl| bl.stones.intersects(&touching))
                .fold(Bits::EMPTY, |acc, bl| acc | bl.stones);
            Region {
                owner: player,
                grids,
                bordering,
            }
        })
        .collect()
}

/// For each block of `player`, the regions vital to it.
pub fn vital_regions(b: &Board, player: Player) -> Vec<(Block, Vec<Region>)> {
    let regs = regions(b, player);
    b.blocks_of(player)
        .into_iter()
        .map(|bl| {
            let v = regs.iter().filter(|r| r.is_vital_to(&bl, b)).copied().collect();
            (bl, v)
        })
        .collect()
}

/// Benson's fixpoint over the blocks of `player`.
pub fn unconditionally_alive(b: &Board, player: Player) -> Vec<Block> {
    let blocks = b.blocks_of(player);
    let regs = regions(b, player);
    // vital[i][j]: region j vital to block i
    let vital: Vec<Vec<bool>> = blocks
        .iter()
        .map(|bl| regs.iter().map(|r| r.is_vital_to(bl, b)).collect())
        .collect();
    let mut alive = vec![true; blocks.len()];
    loop {
        let alive_stones = blocks
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .fold(Bits::EMPTY, |acc, (bl, _)| acc | bl.stones);
        let enclosed: Vec<bool> = regs
            .iter()
            .map(|r| r.bordering.is_subset(&alive_stones))
            .collect();
        let mut changed = false;
        for i in 0..blocks.len() {
            if !alive[i] {
                continue;
            }
            let healthy = (0..regs.len())
                .filter(|&j| vital[i][j] && enclosed[j])
                .count();
            if healthy < 2 {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    blocks
        .into_iter()
        .zip(alive)
        .filter_map(|(bl, a)| a.then_some(bl))
        .collect()
}

/// Stones of the UCA blocks together with every region vital to one of
/// them and enclosed by them. A vital region that also borders a dead block
/// carries no part of the proof and stays out.
pub fn leaf_rzone(b: &Board, uca: &[Block]) -> Result<Zone> {
    if uca.is_empty() {
        return Err(RzsError::EmptyUcaSet);
    }
    let player = uca[0].owner;
    let mut z = Zone::empty(b.size());
    for bl in uca {
        z.add_bits(bl.stones);
    }
    let alive = z.bits();
    for r in regions(b, player) {
        if r.bordering.is_subset(&alive) && uca.iter().any(|bl| r.is_vital_to(bl, b)) {
            z.add_bits(r.grids);
        }
    }
    Ok(z)
}

/// Go goals. The defender is the OR-player.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GoGoal {
    /// Win by making any of these stones unconditionally alive; fail once
    /// none of them holds a defender stone.
    CrucialSafety { defender: Player, crucial: Vec<Grid> },
    /// Win by making any defender block unconditionally alive; fail once
    /// the defender has no stones left on the board.
    KillAllDefense { defender: Player },
}

impl GoGoal {
    pub fn defender(&self) -> Player {
        match self {
            GoGoal::CrucialSafety { defender, .. } | GoGoal::KillAllDefense { defender } => {
                *defender
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GoGoal::CrucialSafety { defender, crucial } => {
                let names: Vec<String> = crucial.iter().map(|g| g.to_string()).collect();
                format!("crucial-safety defender={defender} crucial={}", names.join(","))
            }
            GoGoal::KillAllDefense { defender } => format!("killall defender={defender}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoalStatus {
    Achieved(Zone),
    Failed,
    Undecided,
}

pub fn goal_status(p: &Position, goal: &GoGoal) -> GoalStatus {
    let b = p.board();
    let defender = goal.defender();
    let own = b.stones(defender);
    let crucial_bits = match goal {
        GoGoal::CrucialSafety { crucial, .. } => {
            let bits = crucial
                .iter()
                .fold(Bits::EMPTY, |acc, g| acc | Bits::single(g.index(b.size())));
            if !bits.intersects(&own) {
                return GoalStatus::Failed;
            }
            Some(bits)
        }
        GoGoal::KillAllDefense { .. } => {
            if own.is_empty() {
                return GoalStatus::Failed;
            }
            None
        }
    };
    let uca = unconditionally_alive(b, defender);
    let success = match crucial_bits {
        Some(bits) => uca.iter().any(|bl| bl.stones.intersects(&bits)),
        None => !uca.is_empty(),
    };
    if success {
        GoalStatus::Achieved(leaf_rzone(b, &uca).expect("non-empty UCA set"))
    } else {
        GoalStatus::Undecided
    }
}
