//! Brute-force AND-OR minimax, used as ground truth for the solver.
//!
//! Full width: every legal move is searched at every node, no table, no
//! zones. It shares the goal predicates, the pass policy and the
//! repetition rule with the solver and nothing else.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::benson::GoalStatus;
use crate::board::{Board, Position};
use crate::error::{Result, RzsError};
use crate::grid::{CellState, Grid, Move, Player};
use crate::hexgame::{HexGoal, HexPosition, HexTarget, Side};
use crate::rules::{GoRules, HexRules, Rules};
use crate::solver::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub status: Status,
    /// Positions expanded, the root included.
    pub nodes: u64,
}

struct Minimax<'a, R: Rules> {
    rules: &'a R,
    max_depth: u32,
    nodes: u64,
    path: Vec<u64>,
}

impl<R: Rules> Minimax<'_, R> {
    fn value(&mut self, p: &R::Pos, depth: u32) -> Status {
        self.nodes += 1;
        match self.rules.goal_status(p) {
            GoalStatus::Achieved(_) => return Status::Win,
            GoalStatus::Failed => return Status::Fail,
            GoalStatus::Undecided => {}
        }
        let h = self.rules.hash(p);
        if self.path.contains(&h) {
            return Status::Fail;
        }
        if depth >= self.max_depth {
            return Status::Unknown;
        }
        let mut moves = self.rules.legal_moves(p);
        if moves.is_empty() {
            moves.push(Move::Pass);
        }
        let or_turn = self.rules.is_or_turn(p);
        // OR wants one Win, AND wants one Fail
        let (decisive, fallback) = if or_turn {
            (Status::Win, Status::Fail)
        } else {
            (Status::Fail, Status::Win)
        };
        self.path.push(h);
        let mut unknown = false;
        let mut out = fallback;
        for m in moves {
            let Ok(q) = self.rules.play(p, m) else { continue };
            match self.value(&q, depth + 1) {
                s if s == decisive => {
                    out = decisive;
                    unknown = false;
                    break;
                }
                Status::Unknown => unknown = true,
                _ => {}
            }
        }
        self.path.pop();
        if unknown {
            Status::Unknown
        } else {
            out
        }
    }
}

/// Minimax value of `p` for the OR-player within `max_depth` plies.
pub fn oracle_solve<R: Rules>(rules: &R, p: &R::Pos, max_depth: u32) -> OracleResult {
    let mut m = Minimax {
        rules,
        max_depth,
        nodes: 0,
        path: Vec::new(),
    };
    let status = m.value(p, 0);
    OracleResult {
        status,
        nodes: m.nodes,
    }
}

fn combinations(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..n {
        cur.push(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Every board of the given size with at most `max_stones` stones, in a
/// fixed order (by stone count, then by grid combination, then colouring).
/// Boards are not checked for legality.
pub fn boards_up_to(size: usize, max_stones: usize) -> Result<Vec<Board>> {
    let cells = size * size;
    let mut out = Vec::new();
    for k in 0..=max_stones.min(cells) {
        let mut combos = Vec::new();
        combinations(cells, k, 0, &mut Vec::new(), &mut combos);
        for combo in combos {
            for colours in 0..1u32 << k {
                let mut b = Board::new(size)?;
                for (bit, &idx) in combo.iter().enumerate() {
                    let c = if colours >> bit & 1 == 0 {
                        CellState::Black
                    } else {
                        CellState::White
                    };
                    b.set(Grid::from_index(idx, size), c);
                }
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// A sweep instance: rules, root and a key unique within the sweep.
pub struct SweepCase<R: Rules> {
    pub key: u64,
    pub rules: R,
    pub root: R::Pos,
}

/// Legal 3x3-style kill-all positions: White defends, either side to move.
pub fn go_sweep(size: usize, max_stones: usize) -> Result<Vec<SweepCase<GoRules>>> {
    let rules = GoRules::killall(Player::White);
    let mut out = Vec::new();
    for b in boards_up_to(size, max_stones)? {
        for to_move in [Player::Black, Player::White] {
            if let Ok(p) = Position::new(b, to_move) {
                out.push(SweepCase {
                    key: p.hash(),
                    rules: rules.clone(),
                    root: p,
                });
            }
        }
    }
    Ok(out)
}

/// Hex positions with one crucial stone per instance, aimed at either of
/// its owner's sides, either side to move.
pub fn hex_sweep(size: usize, max_stones: usize) -> Result<Vec<SweepCase<HexRules>>> {
    let mut out = Vec::new();
    for b in boards_up_to(size, max_stones)? {
        for to_move in [Player::Black, Player::White] {
            let p = HexPosition::new(b, to_move);
            for player in [Player::Black, Player::White] {
                for g in b.grids_of(b.stones(player)) {
                    for side in [Side::Bottom, Side::Top, Side::Left, Side::Right] {
                        if side.owner() != player {
                            continue;
                        }
                        let rules = HexRules::new(HexGoal {
                            player,
                            crucial: vec![g],
                            target: HexTarget::Side(side),
                        });
                        let tag = (g.index(size) * 4 + side as usize + 1) as u64;
                        out.push(SweepCase {
                            key: p.hash() ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15),
                            rules,
                            root: p,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Oracle verdicts for a whole sweep, computed in parallel.
pub fn sweep_verdicts<R: Rules + Send>(cases: &[SweepCase<R>], max_depth: u32) -> Vec<(u64, Status)>
where
    R::Pos: Send,
{
    cases
        .par_iter()
        .map(|c| (c.key, oracle_solve(&c.rules, &c.root, max_depth).status))
        .collect()
}

/// One line per instance: `hash,verdict,depth`, hash in hex.
pub fn write_fixture(rows: &[(u64, Status)], depth: u32) -> String {
    let mut out = String::new();
    for (key, status) in rows {
        let _ = writeln!(out, "{key:016x},{status},{depth}");
    }
    out
}

pub fn parse_fixture(text: &str) -> Result<Vec<(u64, Status, u32)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let bad = || RzsError::Parse(format!("bad fixture line `{line}`"));
            let mut parts = line.split(',');
            let key = u64::from_str_radix(parts.next().ok_or_else(bad)?.trim(), 16).map_err(|_| bad())?;
            let status = match parts.next().ok_or_else(bad)?.trim() {
                "WIN" => Status::Win,
                "FAIL" => Status::Fail,
                "UNKNOWN" => Status::Unknown,
                _ => return Err(bad()),
            };
            let depth = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
            Ok((key, status, depth))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn board_enumeration_counts() {
        // sum over k of C(9,k) * 2^k
        assert_eq!(boards_up_to(3, 3).unwrap().len(), 1 + 18 + 144 + 672);
        assert_eq!(boards_up_to(2, 4).unwrap().len(), 81);
    }

    #[test]
    fn alive_is_one_node() {
        let b = Board::from_rows(&[".O.O.", "OOOOO", ".....", ".....", "....."]).unwrap();
        let p = Position::new(b, Player::Black).unwrap();
        let r = oracle_solve(&GoRules::killall(Player::White), &p, 4);
        assert_eq!(r, OracleResult { status: Status::Win, nodes: 1 });
    }

    #[test]
    fn no_white_stones_fails() {
        let p = Position::empty(3, Player::Black).unwrap();
        let r = oracle_solve(&GoRules::killall(Player::White), &p, 4);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn fixture_round_trip() {
        let rows = vec![(7u64, Status::Win), (u64::MAX, Status::Unknown)];
        let text = write_fixture(&rows, 6);
        let back = parse_fixture(&text).unwrap();
        assert_eq!(back, vec![(7, Status::Win, 6), (u64::MAX, Status::Unknown, 6)]);
    }
}
