//! Depth-first AchieveGoal with must-play regions.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use super::ordering::order_moves;
use super::tree::{Edge, NodeKind, RzstNode};
use super::tt::{Entry, TranspositionTable};
use super::{SolveResult, SolverConfig, Stats, Status};
use crate::benson::GoalStatus;
use crate::error::{Result, RzsError};
use crate::grid::Move;
use crate::rules::Rules;
use crate::zone::Zone;

enum Outcome {
    Win(Arc<RzstNode>),
    /// `tainted` when the disproof leans on a repetition along the current
    /// path, which makes it unfit for the table.
    Fail { tainted: bool },
    Unknown,
}

/// The shrinking set of AND-player moves that still need a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MustPlayRegion {
    pub remaining: Vec<Move>,
}

impl MustPlayRegion {
    pub fn new(moves: Vec<Move>) -> MustPlayRegion {
        MustPlayRegion { remaining: moves }
    }

    pub fn contains(&self, m: Move) -> bool {
        self.remaining.contains(&m)
    }

    pub fn is_empty(&self) -> bool {
        self.remaining.is_empty()
    }

    /// Shrinks the region after `m` was proven with zone `child_rz`. A move
    /// outside the zone is a null move: only moves inside the zone remain.
    pub fn update(&mut self, m: Move, child_rz: &Zone) -> Result<()> {
        if !self.contains(m) {
            return Err(RzsError::MoveNotInRegion(m.to_string()));
        }
        if child_rz.contains_move(m) {
            self.remaining.retain(|&x| x != m);
        } else {
            self.remaining.retain(|&x| child_rz.contains_move(x));
        }
        Ok(())
    }

    fn remove(&mut self, m: Move) {
        self.remaining.retain(|&x| x != m);
    }

    fn intersect(&mut self, z: &Zone) {
        self.remaining.retain(|&x| z.contains_move(x));
    }
}

/// Legal moves, or a forced pass when the side to move has none.
pub(crate) fn moves_or_pass<R: Rules>(rules: &R, p: &R::Pos) -> Vec<Move> {
    let moves = rules.legal_moves(p);
    if moves.is_empty() {
        vec![Move::Pass]
    } else {
        moves
    }
}

struct Search<'a, R: Rules> {
    rules: &'a R,
    cfg: &'a SolverConfig,
    tt: &'a TranspositionTable,
    goal: u64,
    stats: Stats,
    path: Vec<u64>,
    exhausted: bool,
    repetition: bool,
    depth_cut: bool,
    max_depth: u32,
    start: Instant,
}

impl<'a, R: Rules> Search<'a, R> {
    fn out_of_budget(&mut self) -> bool {
        if self.stats.nodes >= self.cfg.budget.max_nodes {
            return true;
        }
        match self.cfg.budget.deadline {
            Some(d) if self.stats.nodes.is_multiple_of(256) => self.start.elapsed() >= d,
            _ => false,
        }
    }

    fn achieve(&mut self, p: &R::Pos, depth: u32) -> Outcome {
        let hash = self.rules.hash(p);
        if let Some(e) = self.tt.lookup(hash, self.goal) {
            self.stats.tt_hits += 1;
            return match e {
                Entry::Win(node) => Outcome::Win(node),
                Entry::Fail => Outcome::Fail { tainted: false },
            };
        }
        if self.out_of_budget() {
            self.exhausted = true;
            return Outcome::Unknown;
        }
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);

        match self.rules.goal_status(p) {
            GoalStatus::Achieved(z) => {
                let node = Arc::new(RzstNode::leaf(hash, z));
                self.tt.store(hash, self.goal, Entry::Win(node.clone()));
                return Outcome::Win(node);
            }
            GoalStatus::Failed => {
                self.tt.store(hash, self.goal, Entry::Fail);
                return Outcome::Fail { tainted: false };
            }
            GoalStatus::Undecided => {}
        }
        if self.path.contains(&hash) {
            self.repetition = true;
            return Outcome::Fail { tainted: true };
        }
        if depth >= self.max_depth {
            self.depth_cut = true;
            return Outcome::Unknown;
        }

        self.path.push(hash);
        let out = if self.rules.is_or_turn(p) {
            self.or_node(p, hash, depth)
        } else {
            self.and_node(p, hash, depth)
        };
        self.path.pop();

        match &out {
            Outcome::Win(node) => self.tt.store(hash, self.goal, Entry::Win(node.clone())),
            Outcome::Fail { tainted: false } => self.tt.store(hash, self.goal, Entry::Fail),
            _ => {}
        }
        out
    }

    fn ordered(&self, p: &R::Pos) -> Vec<Move> {
        let moves = moves_or_pass(self.rules, p);
        let mut order = order_moves(
            self.rules.board(p),
            self.rules.to_move(p),
            &moves,
            &self.cfg.ordering,
        );
        if self.cfg.probe {
            let rank: Vec<u8> = order.iter().map(|&m| self.probe_rank(p, m)).collect();
            let mut ranked: Vec<(u8, Move)> = rank.into_iter().zip(order).collect();
            // stable: the policy order survives within each class
            ranked.sort_by_key(|&(r, _)| r);
            order = ranked.into_iter().map(|(_, m)| m).collect();
        }
        order
    }

    /// 0 for a move that decides the goal in the mover's favour at once; at
    /// OR nodes 1 for a move that would win next turn if the opponent
    /// passed; otherwise 2.
    fn probe_rank(&self, p: &R::Pos, m: Move) -> u8 {
        let Ok(q) = self.rules.play(p, m) else { return 2 };
        let or_turn = self.rules.is_or_turn(p);
        match self.rules.goal_status(&q) {
            GoalStatus::Achieved(_) if or_turn => return 0,
            GoalStatus::Failed if !or_turn => return 0,
            GoalStatus::Undecided if or_turn => {}
            _ => return 2,
        }
        let again = self.rules.skip_turn(&q);
        let threat = self.rules.legal_moves(&again).into_iter().any(|m2| {
            self.rules
                .play(&again, m2)
                .map(|r| matches!(self.rules.goal_status(&r), GoalStatus::Achieved(_)))
                .unwrap_or(false)
        });
        if threat {
            1
        } else {
            2
        }
    }

    fn or_node(&mut self, p: &R::Pos, hash: u64, depth: u32) -> Outcome {
        let mut unknown = false;
        let mut tainted = false;
        for m in self.ordered(p) {
            let Ok(child) = self.rules.play(p, m) else { continue };
            match self.achieve(&child, depth + 1) {
                Outcome::Win(node) => {
                    let mut z_u = node.rz;
                    if let Some(g) = m.grid() {
                        z_u.insert(g);
                    }
                    let rz = self
                        .rules
                        .dilate_or(p, m, &z_u)
                        .expect("winning move was just played");
                    return Outcome::Win(Arc::new(RzstNode {
                        hash,
                        kind: NodeKind::Or,
                        rz,
                        children: vec![Edge {
                            mv: m,
                            null: false,
                            node,
                        }],
                    }));
                }
                Outcome::Fail { tainted: t } => tainted |= t,
                Outcome::Unknown => unknown = true,
            }
        }
        if unknown {
            Outcome::Unknown
        } else {
            Outcome::Fail { tainted }
        }
    }

    fn and_node(&mut self, p: &R::Pos, hash: u64, depth: u32) -> Outcome {
        let order = self.ordered(p);
        let mut region = MustPlayRegion::new(order.clone());
        let mut tried: HashSet<Move> = HashSet::new();
        let mut union = Zone::empty(self.rules.size(p));
        let mut children = Vec::new();
        // The region may shrink below moves already ordered, so re-read it
        // before every trial.
        while let Some(m) = order
            .iter()
            .copied()
            .find(|m| region.contains(*m) && !tried.contains(m))
        {
            tried.insert(m);
            let Ok(child) = self.rules.play(p, m) else {
                region.remove(m);
                continue;
            };
            match self.achieve(&child, depth + 1) {
                Outcome::Fail { tainted } => return Outcome::Fail { tainted },
                Outcome::Unknown => {}
                Outcome::Win(node) => {
                    let z = node.rz;
                    union.add_bits(z.bits());
                    let null = !z.contains_move(m)
                        && self.rules.pattern(p, &z) == self.rules.pattern(&child, &z);
                    if self.cfg.rzs && null {
                        region.intersect(&z);
                    } else {
                        region.remove(m);
                    }
                    children.push(Edge { mv: m, null, node });
                }
            }
        }
        if !region.is_empty() {
            return Outcome::Unknown;
        }
        let rz = self.rules.dilate_and(p, &union);
        Outcome::Win(Arc::new(RzstNode {
            hash,
            kind: NodeKind::And,
            rz,
            children,
        }))
    }
}

/// Algorithm AchieveGoal with a fresh transposition table.
pub fn achieve_goal<R: Rules>(rules: &R, p: &R::Pos, cfg: &SolverConfig) -> SolveResult {
    achieve_goal_with_table(rules, p, cfg, &TranspositionTable::new())
}

pub fn achieve_goal_with_table<R: Rules>(
    rules: &R,
    p: &R::Pos,
    cfg: &SolverConfig,
    tt: &TranspositionTable,
) -> SolveResult {
    let mut s = Search {
        rules,
        cfg,
        tt,
        goal: rules.goal_id() ^ if cfg.rzs { 0 } else { 0x9e37_79b9_7f4a_7c15 },
        stats: Stats::default(),
        path: Vec::new(),
        exhausted: false,
        repetition: false,
        depth_cut: false,
        max_depth: cfg.budget.max_depth,
        start: Instant::now(),
    };
    let first = if cfg.iterative { 1.min(cfg.budget.max_depth) } else { cfg.budget.max_depth };
    let mut out = Outcome::Unknown;
    for limit in first..=cfg.budget.max_depth {
        s.max_depth = limit;
        s.depth_cut = false;
        out = s.achieve(p, 0);
        if !matches!(out, Outcome::Unknown) || s.exhausted || !s.depth_cut {
            break;
        }
    }
    let (status, tree) = match out {
        Outcome::Win(node) => (Status::Win, Some(node)),
        Outcome::Fail { .. } => (Status::Fail, None),
        Outcome::Unknown => (Status::Unknown, None),
    };
    SolveResult {
        status,
        rz: tree.as_ref().map(|t| t.rz),
        tree,
        stats: s.stats,
        budget_exhausted: s.exhausted,
        repetition_seen: s.repetition,
    }
}
