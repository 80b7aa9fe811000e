//! Replaying a proof tree on positions that share its root zone pattern,
//! and direct checks of the three consistent-replay conditions.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::search::moves_or_pass;
use super::tree::{NodeKind, RzstNode};
use crate::benson::GoalStatus;
use crate::error::{Result, RzsError};
use crate::grid::{CellState, Grid, Move, Player};
use crate::rules::Rules;
use crate::zone::Zone;

#[derive(Clone, Debug)]
pub struct ReplayOptions {
    /// Largest board on which every adversary move is tried.
    pub exhaustive_max_size: usize,
    /// Out-of-zone adversary moves sampled per AND node on larger boards.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions {
            exhaustive_max_size: 5,
            samples: 3,
            seed: 0x5245_504c,
        }
    }
}

fn same_pattern<R: Rules>(rules: &R, a: &R::Pos, b: &R::Pos, z: &Zone) -> bool {
    rules.to_move(a) == rules.to_move(b) && rules.pattern(a, z) == rules.pattern(b, z)
}

struct Replayer<'a, R: Rules> {
    rules: &'a R,
    opts: &'a ReplayOptions,
    rng: ChaCha8Rng,
    memo: HashMap<(usize, u64), bool>,
}

impl<'a, R: Rules> Replayer<'a, R> {
    fn adversary_moves(&mut self, node: &RzstNode, q: &R::Pos) -> Vec<Move> {
        let all = moves_or_pass(self.rules, q);
        if self.rules.size(q) <= self.opts.exhaustive_max_size {
            return all;
        }
        let (mut inside, mut outside): (Vec<Move>, Vec<Move>) =
            all.into_iter().partition(|&m| node.rz.contains_move(m));
        outside.shuffle(&mut self.rng);
        inside.extend(outside.into_iter().take(self.opts.samples));
        inside
    }

    fn run(&mut self, node: &RzstNode, q: &R::Pos) -> bool {
        let key = (node as *const RzstNode as usize, self.rules.hash(q));
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.step(node, q);
        self.memo.insert(key, v);
        v
    }

    fn step(&mut self, node: &RzstNode, q: &R::Pos) -> bool {
        match node.kind {
            NodeKind::Leaf => matches!(self.rules.goal_status(q), GoalStatus::Achieved(_)),
            NodeKind::Or => {
                let Some(edge) = node.children.first() else { return false };
                match self.rules.play(q, edge.mv) {
                    Ok(next) => self.run(&edge.node, &next),
                    Err(_) => false,
                }
            }
            NodeKind::And => {
                for m in self.adversary_moves(node, q) {
                    let Ok(next) = self.rules.play(q, m) else { continue };
                    let ok = if let Some(e) = node.child(m) {
                        self.run(&e.node.clone(), &next)
                    } else if let Some(e) = node
                        .children
                        .iter()
                        .find(|e| e.null && !e.node.rz.contains_move(m))
                    {
                        self.run(&e.node.clone(), &next)
                    } else if !node.rz.contains_move(m) {
                        match self.rules.ignore_move(&next) {
                            Some(again) => self.run(node, &again),
                            None => false,
                        }
                    } else {
                        false
                    };
                    if !ok {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// Plays the tree's strategy on `p_star` against every (or a sample of)
/// adversary reply and reports whether every line reaches the goal.
pub fn verify_replay<R: Rules>(
    rules: &R,
    tree: &RzstNode,
    root: &R::Pos,
    p_star: &R::Pos,
    opts: &ReplayOptions,
) -> Result<bool> {
    if !same_pattern(rules, root, p_star, &tree.rz) {
        return Err(RzsError::PatternMismatch);
    }
    let mut r = Replayer {
        rules,
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        memo: HashMap::new(),
    };
    Ok(r.run(tree, p_star))
}

/// CR-1 and CR-2 at AND nodes, CR-3 at OR nodes, the goal itself at leaves.
pub fn check_cr_conditions<R: Rules>(
    rules: &R,
    node_p: &R::Pos,
    node: &RzstNode,
    p_star: &R::Pos,
) -> Result<bool> {
    let z = &node.rz;
    if !same_pattern(rules, node_p, p_star, z) {
        return Err(RzsError::PatternMismatch);
    }
    let ok = match node.kind {
        NodeKind::Leaf => matches!(rules.goal_status(p_star), GoalStatus::Achieved(_)),
        NodeKind::Or => {
            let m = node.winning_move().ok_or(RzsError::PatternMismatch)?;
            match (rules.play(node_p, m), rules.play(p_star, m)) {
                (Ok(a), Ok(b)) => rules.pattern(&a, z) == rules.pattern(&b, z),
                _ => false,
            }
        }
        NodeKind::And => moves_or_pass(rules, p_star).into_iter().all(|m| {
            let Ok(after_star) = rules.play(p_star, m) else { return true };
            if z.contains_move(m) {
                // CR-1
                match rules.play(node_p, m) {
                    Ok(after) => rules.pattern(&after, z) == rules.pattern(&after_star, z),
                    Err(_) => false,
                }
            } else {
                // CR-2
                rules.pattern(&after_star, z) == rules.pattern(p_star, z)
            }
        }),
    };
    Ok(ok)
}

/// Positions that agree with `p` on `z` (and on the player to move) and
/// are legal under `rules`. Enumerates every filling of the outside grids
/// when there are at most `cap` of them, otherwise samples `cap` fillings.
pub fn same_pattern_positions<R: Rules>(
    rules: &R,
    p: &R::Pos,
    z: &Zone,
    cap: usize,
    seed: u64,
) -> Vec<R::Pos> {
    let board = *rules.board(p);
    let to_move = rules.to_move(p);
    let outside: Vec<Grid> = z.complement().grids().collect();
    let states = [CellState::Empty, CellState::Black, CellState::White];
    let fill = |digits: &dyn Fn(usize) -> usize| {
        let mut b = board;
        for (k, &g) in outside.iter().enumerate() {
            b.set(g, states[digits(k)]);
        }
        rules.make(b, to_move)
    };
    let total = 3f64.powi(outside.len() as i32);
    let mut out = Vec::new();
    if total <= cap as f64 {
        for code in 0..total as usize {
            let digit = |k: usize| (code / 3usize.pow(k as u32)) % 3;
            if let Some(q) = fill(&digit) {
                out.push(q);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..cap {
            let digits: Vec<usize> = (0..outside.len()).map(|_| rng.gen_range(0..3)).collect();
            if let Some(q) = fill(&|k| digits[k]) {
                out.push(q);
            }
        }
    }
    out
}

/// Same-pattern positions that differ from `p` only by extra stones of
/// `player` on empty grids outside `z`.
pub fn with_extra_stone<R: Rules>(rules: &R, p: &R::Pos, z: &Zone, player: Player) -> Vec<R::Pos> {
    let board = *rules.board(p);
    z.complement()
        .grids()
        .filter(|&g| board.get(g) == CellState::Empty)
        .filter_map(|g| {
            let mut b = board;
            b.set(g, CellState::of(player));
            rules.make(b, rules.to_move(p))
        })
        .collect()
}

/// Every (position, node) pair of a proof tree, reached by replaying the
/// tree's moves from `root`. Shared subtrees are visited once per position.
pub fn tree_positions<'t, R: Rules>(
    rules: &R,
    root: &R::Pos,
    tree: &'t RzstNode,
) -> Vec<(R::Pos, &'t RzstNode)> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![(*root, tree)];
    while let Some((p, node)) = stack.pop() {
        if !seen.insert((node as *const RzstNode as usize, rules.hash(&p))) {
            continue;
        }
        for e in &node.children {
            if let Ok(next) = rules.play(&p, e.mv) {
                stack.push((next, &*e.node));
            }
        }
        out.push((p, node));
    }
    out
}
