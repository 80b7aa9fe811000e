//! Move ordering policies.

use std::collections::HashSet;

use crate::board::Board;
use crate::error::{Result, RzsError};
use crate::grid::{Move, Player};
use crate::zone::Bits;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum MoveOrdering {
    /// Row-major grid order, pass last.
    #[default]
    Lexicographic,
    /// Moves that press on opponent liberties first.
    LibertyPressure,
    /// Listed moves first, in the listed order, then the rest row-major.
    Priors(Vec<Move>),
}

impl MoveOrdering {
    pub fn name(&self) -> String {
        match self {
            MoveOrdering::Lexicographic => "lex".into(),
            MoveOrdering::LibertyPressure => "liberty".into(),
            MoveOrdering::Priors(ms) => {
                let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                format!("priors[{}]", names.join(","))
            }
        }
    }

    /// Reads a priors file: moves separated by whitespace or commas, `#`
    /// starts a comment.
    pub fn parse_priors(text: &str) -> Result<MoveOrdering> {
        let mut moves = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
                if !tok.is_empty() {
                    moves.push(tok.parse::<Move>()?);
                }
            }
        }
        if moves.is_empty() {
            return Err(RzsError::Parse("priors file lists no moves".into()));
        }
        Ok(MoveOrdering::Priors(moves))
    }
}

fn lex_key(m: &Move) -> (bool, Option<crate::grid::Grid>) {
    (matches!(m, Move::Pass), m.grid())
}

fn pressure(board: &Board, me: Player, m: Move) -> i64 {
    let Some(g) = m.grid() else { return i64::MIN };
    let point = Bits::single(g.index(board.size()));
    let mut score = 0i64;
    for bl in board.blocks_touching(me.opponent(), point) {
        score += (5 - bl.liberty_count().min(4) as i64) * 2;
    }
    score += board.blocks_touching(me, point).len() as i64;
    let near = board.geometry().neighbors4(point) & board.occupied();
    if !near.is_empty() {
        score += 1;
    }
    score
}

/// Deterministic permutation of `moves` for the player `me` on `board`.
pub fn order_moves(board: &Board, me: Player, moves: &[Move], policy: &MoveOrdering) -> Vec<Move> {
    let mut out = moves.to_vec();
    out.sort_by_key(lex_key);
    match policy {
        MoveOrdering::Lexicographic => {}
        MoveOrdering::LibertyPressure => {
            // stable sort keeps row-major order among ties
            out.sort_by_key(|&m| std::cmp::Reverse(pressure(board, me, m)));
        }
        MoveOrdering::Priors(pri) => {
            let present: HashSet<Move> = out.iter().copied().collect();
            let mut front: Vec<Move> = Vec::new();
            for m in pri {
                if present.contains(m) && !front.contains(m) {
                    front.push(*m);
                }
            }
            out.retain(|m| !front.contains(m));
            front.extend(out);
            out = front;
        }
    }
    out
}
