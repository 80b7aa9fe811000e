//! Oracle sweeps with their committed verdict fixtures.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use rzs_core::oracle::{go_sweep, hex_sweep, parse_fixture, sweep_verdicts, write_fixture, SweepCase};
use rzs_core::solver::RzstNode;
use rzs_core::*;

use super::fixtures;

pub const GO_DEPTH: u32 = 6;
pub const HEX_DEPTH: u32 = 9;

/// Oracle verdicts for `cases`, read from `fixtures/oracle/<name>`.
/// Recomputed and rewritten when the file is missing or when
/// `RZS_REGEN_ORACLE` is set.
pub fn verdicts<R: Rules + Send>(name: &str, cases: &[SweepCase<R>], depth: u32) -> Vec<Status>
where
    R::Pos: Send,
{
    let path = fixtures().join("oracle").join(name);
    let regen = std::env::var_os("RZS_REGEN_ORACLE").is_some();
    if !regen {
        if let Ok(text) = std::fs::read_to_string(&path) {
            let rows = parse_fixture(&text).unwrap();
            assert_eq!(rows.len(), cases.len(), "{name}: fixture and sweep disagree on size");
            return rows
                .iter()
                .zip(cases)
                .map(|((key, status, d), c)| {
                    assert_eq!(*key, c.key, "{name}: fixture out of step with the sweep");
                    assert_eq!(*d, depth);
                    *status
                })
                .collect();
        }
    }
    let rows = sweep_verdicts(cases, depth);
    std::fs::write(&path, write_fixture(&rows, depth)).unwrap();
    rows.into_iter().map(|(_, s)| s).collect()
}

pub struct SweepRun<R: Rules> {
    pub cases: Vec<SweepCase<R>>,
    pub oracle: Vec<Status>,
    pub rzs: Vec<SolveResult>,
    pub plain_nodes: Vec<u64>,
    pub plain: Vec<Status>,
}

impl<R: Rules> SweepRun<R> {
    pub fn decided(&self) -> usize {
        self.oracle
            .iter()
            .zip(&self.rzs)
            .filter(|(o, r)| **o != Status::Unknown && r.status != Status::Unknown)
            .count()
    }

    pub fn mismatches(&self) -> Vec<usize> {
        (0..self.cases.len())
            .filter(|&i| {
                let (o, r) = (self.oracle[i], self.rzs[i].status);
                o != Status::Unknown && r != Status::Unknown && o != r
            })
            .collect()
    }

    /// Instances where must-play pruning searched more nodes than plain DFS.
    pub fn pruning_losses(&self) -> Vec<usize> {
        (0..self.cases.len())
            .filter(|&i| self.rzs[i].stats.nodes > self.plain_nodes[i])
            .collect()
    }

    pub fn wins(&self) -> Vec<(&SweepCase<R>, Arc<RzstNode>)> {
        self.cases
            .iter()
            .zip(&self.rzs)
            .filter_map(|(c, r)| r.tree.clone().map(|t| (c, t)))
            .collect()
    }
}

fn run<R: Rules + Send>(name: &str, cases: Vec<SweepCase<R>>, depth: u32) -> SweepRun<R>
where
    R::Pos: Send + Sync,
{
    let oracle = verdicts(name, &cases, depth);
    let mut cfg = SolverConfig::default();
    cfg.budget.max_depth = depth;
    let plain_cfg = cfg.plain();
    let both: Vec<(SolveResult, SolveResult)> = cases
        .par_iter()
        .map(|c| (achieve_goal(&c.rules, &c.root, &cfg), achieve_goal(&c.rules, &c.root, &plain_cfg)))
        .collect();
    let (rzs, plain): (Vec<_>, Vec<_>) = both.into_iter().unzip();
    SweepRun {
        cases,
        oracle,
        plain_nodes: plain.iter().map(|r| r.stats.nodes).collect(),
        plain: plain.iter().map(|r| r.status).collect(),
        rzs,
    }
}

/// 3x3 kill-all positions with at most three stones, depth 6. Computed
/// once per test binary.
pub fn go() -> &'static SweepRun<GoRules> {
    static RUN: OnceLock<SweepRun<GoRules>> = OnceLock::new();
    RUN.get_or_init(|| run("go3x3.csv", go_sweep(3, 3).unwrap(), GO_DEPTH))
}

/// 3x3 Hex positions with at most two stones, searched to the end.
pub fn hex() -> &'static SweepRun<HexRules> {
    static RUN: OnceLock<SweepRun<HexRules>> = OnceLock::new();
    RUN.get_or_init(|| run("hex3x3.csv", hex_sweep(3, 2).unwrap(), HEX_DEPTH))
}
