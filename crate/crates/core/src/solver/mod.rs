//! Relevance-zone based search: proof search, proof trees, replay checks.

pub mod ordering;
pub mod replay;
pub mod search;
pub mod tree;
pub mod tt;

use std::fmt;
use std::sync::Arc;
use std::time::Duration;

use crate::grid::Move;
use crate::rules::Rules;
use crate::zone::Zone;

pub use ordering::{order_moves, MoveOrdering};
pub use replay::{check_cr_conditions, same_pattern_positions, tree_positions, verify_replay, ReplayOptions};
pub use search::{achieve_goal, achieve_goal_with_table, MustPlayRegion};
pub use tree::{parse_proof, write_header, write_proof, Edge, NodeKind, ProofHeader, RzstNode};
pub use tt::{Entry, TranspositionTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Win,
    Fail,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Win => "WIN",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_depth: u32,
    pub deadline: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 1_000_000,
            max_depth: 64,
            deadline: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub budget: SearchBudget,
    pub ordering: MoveOrdering,
    /// Shrink must-play regions with null moves. Off gives plain DFS.
    pub rzs: bool,
    /// Before the ordering policy, try moves that decide the goal at once:
    /// immediate wins at OR nodes, immediate failures at AND nodes.
    pub probe: bool,
    /// Deepen the depth limit one ply at a time up to `budget.max_depth`,
    /// keeping the table between iterations. Helps on open boards where
    /// plain DFS sinks into long lines, but repeats shallow work and finds
    /// fewer null moves, since depth-cut children stay unproven.
    pub iterative: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: SearchBudget::default(),
            ordering: MoveOrdering::Lexicographic,
            rzs: true,
            probe: true,
            iterative: false,
        }
    }
}

impl SolverConfig {
    pub fn plain(&self) -> SolverConfig {
        SolverConfig {
            rzs: false,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// AchieveGoal calls that passed the table lookup.
    pub nodes: u64,
    pub tt_hits: u64,
    pub max_depth: u32,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: Status,
    pub rz: Option<Zone>,
    pub tree: Option<Arc<RzstNode>>,
    pub stats: Stats,
    pub budget_exhausted: bool,
    /// A line was cut as a repetition; a Fail holds only under the
    /// no-repetition rule.
    pub repetition_seen: bool,
}

/// One step of an AND node's must-play bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: Move,
    pub null: bool,
    pub remaining: Vec<Move>,
}

/// Replays the must-play updates of an AND node from its children.
pub fn must_play_trace<R: Rules>(rules: &R, p: &R::Pos, node: &RzstNode) -> Vec<TraceStep> {
    let mut region = MustPlayRegion::new(search::moves_or_pass(rules, p));
    node.children
        .iter()
        .map(|e| {
            if e.null {
                region.remaining.retain(|&x| e.node.rz.contains_move(x));
            } else {
                region.remaining.retain(|&x| x != e.mv);
            }
            TraceStep {
                mv: e.mv,
                null: e.null,
                remaining: region.remaining.clone(),
            }
        })
        .collect()
}

/// Header for a proof file describing this run.
pub fn proof_header<R: Rules>(rules: &R, p: &R::Pos, cfg: &SolverConfig, res: &SolveResult) -> ProofHeader {
    let mut h = ProofHeader::default();
    h.push("format", "rzst 1");
    h.push("goal", rules.describe());
    h.push("size", rules.size(p).to_string());
    h.push("to_move", rules.to_move(p).to_string());
    h.push("rzs", if cfg.rzs { "on" } else { "off" });
    h.push("ordering", cfg.ordering.name());
    h.push("probe", if cfg.probe { "on" } else { "off" });
    h.push(
        "budget",
        format!("nodes={} depth={}", cfg.budget.max_nodes, cfg.budget.max_depth),
    );
    h.push(
        "stats",
        format!(
            "nodes={} tt_hits={} max_depth={}",
            res.stats.nodes, res.stats.tt_hits, res.stats.max_depth
        ),
    );
    h.push("verdict", res.status.to_string());
    h
}
