//! Zone dilation for Go.
//!
//! A winning node's zone must be large enough that the proof replays on any
//! position sharing its zone pattern. The rules below grow a zone until the
//! replay conditions hold: every z-block keeps a z-liberty (DL-1), captures by
//! the winner pull in the captured and capturing blocks, suicide points of the
//! loser keep their surroundings, and winner blocks touching the zone border
//! keep enough liberties inside the zone. Where a rule must choose among
//! liberties it takes the lowest grids in row-major order.

use crate::board::{Board, Position};
use crate::error::{Result, RzsError};
use crate::grid::{Grid, Move};
use crate::zone::{Bits, Zone};

/// Zone grids with at least one neighbour outside the zone.
pub fn z_border(b: &Board, z: &Zone) -> Zone {
    let geo = b.geometry();
    let outside = geo.all & !z.bits();
    Zone::from_bits(b.size(), z.bits() & geo.neighbors4(outside))
}

fn add_lowest(z: &mut Zone, candidates: Bits, count: usize) {
    for i in candidates.ones().take(count) {
        z.add_bits(Bits::single(i));
    }
}

/// DL-1: every block with a stone in `z` gets at least one liberty in `z`.
pub fn apply_dl1(b: &Board, z: &Zone) -> Zone {
    let mut z = *z;
    loop {
        let before = z;
        for bl in crate::board::blocks(b) {
            if bl.stones.intersects(&z.bits()) && !bl.liberties.intersects(&z.bits()) {
                add_lowest(&mut z, bl.liberties, 1);
            }
        }
        if z == before {
            return z;
        }
    }
}

/// Dilation at an OR node won by `winning_move`; `z_u` already contains the
/// move's grid together with the child's zone.
pub fn dilate_or(p: &Position, winning_move: Move, z_u: &Zone) -> Result<Zone> {
    let (next, captured) = p
        .play_with_captures(winning_move)
        .map_err(|_| RzsError::IllegalMove(winning_move.to_string()))?;
    let me = p.to_move();
    let b = p.board();
    let mut z = *z_u;
    if let Some(g) = winning_move.grid() {
        z.insert(g);
    }
    if !captured.is_empty() {
        z.add_bits(captured);
        for bl in b.blocks_touching(me, captured) {
            z.add_bits(bl.stones);
        }
    }
    // DL-1 before and after the move, so the winner's block formed by the
    // move and any loser block beside it keep a liberty inside the zone.
    loop {
        let before = z;
        z = apply_dl1(b, &z);
        z = apply_dl1(next.board(), &z);
        if z == before {
            return Ok(z);
        }
    }
}

/// Dilation at an AND node whose children were all proven; `z_u` is the
/// union of the children's zones.
pub fn dilate_and(p: &Position, z_u: &Zone) -> Zone {
    let b = p.board();
    let attacker = p.to_move();
    let winner = attacker.opponent();
    let mut z = *z_u;
    loop {
        let before = z;

        // Suicide points of the AND-player must stay suicides.
        for i in (z.bits() & b.empty_bits()).ones() {
            let g = Grid::from_index(i, b.size());
            if !matches!(b.place(attacker, g), Err(RzsError::SuicideMove(_))) {
                continue;
            }
            let point = Bits::single(i);
            let own = b.blocks_touching(attacker, point);
            let mut area = point;
            for bl in &own {
                z.add_bits(bl.stones);
                area |= bl.stones;
            }
            for bl in b.blocks_touching(winner, area) {
                z.add_bits(bl.stones);
            }
        }

        // Winner blocks on the border must not be capturable from outside.
        let border = z_border(b, &z).bits();
        for bl in b.blocks_of(winner) {
            if !bl.stones.intersects(&border) {
                continue;
            }
            if bl.liberty_count() >= 2 {
                let inside = (bl.liberties & z.bits()).count();
                if inside < 2 {
                    let outside = bl.liberties & !z.bits();
                    add_lowest(&mut z, outside, 2 - inside);
                }
            } else {
                z.add_bits(bl.liberties | bl.stones);
                for att in b.blocks_touching(attacker, bl.stones) {
                    z.add_bits(att.stones);
                }
            }
        }

        z = apply_dl1(b, &z);
        if z == before {
            return z;
        }
    }
}
