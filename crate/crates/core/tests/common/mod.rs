#![allow(dead_code)]

pub mod figures;
pub mod props;
pub mod sweep;

use std::path::PathBuf;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rzs_core::solver::{
    check_cr_conditions, same_pattern_positions, tree_positions, verify_replay, MoveOrdering,
    ReplayOptions, RzstNode,
};
use rzs_core::*;
use std::result::Result;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn read(rel: &str) -> String {
    let path = fixtures().join(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn spec(rel: &str) -> ProblemSpec {
    parse_problem(&read(rel)).unwrap()
}

pub fn go(rel: &str) -> (GoRules, Position) {
    match spec(rel).instance(true).unwrap() {
        Instance::Go(r, p) => (r, p),
        Instance::Hex(..) => panic!("{rel} is a hex problem"),
    }
}

pub fn hex(rel: &str) -> (HexRules, HexPosition) {
    match spec(rel).instance(true).unwrap() {
        Instance::Hex(r, p) => (r, p),
        Instance::Go(..) => panic!("{rel} is a go problem"),
    }
}

pub fn config(priors: Option<&str>) -> SolverConfig {
    let ordering = match priors {
        Some(rel) => MoveOrdering::parse_priors(&read(rel)).unwrap(),
        None => MoveOrdering::Lexicographic,
    };
    SolverConfig {
        ordering,
        ..SolverConfig::default()
    }
}

pub fn g(name: &str, size: usize) -> Grid {
    Grid::parse(name, size).unwrap()
}

pub fn m(name: &str, size: usize) -> Move {
    Move::Place(g(name, size))
}

pub fn zone(size: usize, names: &[&str]) -> Zone {
    Zone::from_grids(size, names.iter().map(|n| g(n, size)))
}

pub fn names(z: &Zone) -> Vec<String> {
    z.grids().map(|g| g.to_string()).collect()
}

/// Leaf zone of a position whose goal already holds.
pub fn leaf_zone<R: Rules>(rules: &R, p: &R::Pos) -> Zone {
    match rules.goal_status(p) {
        GoalStatus::Achieved(z) => z,
        other => panic!("expected a decided leaf, got {other:?}"),
    }
}

/// The union of all child zones of a node.
pub fn child_union(node: &RzstNode) -> Zone {
    let mut z = Zone::empty(node.rz.size());
    for e in &node.children {
        z = z.union(&e.node.rz).unwrap();
    }
    z
}

/// Every child zone lies inside its parent zone.
pub fn zz1_holds(tree: &RzstNode) -> bool {
    let mut ok = true;
    tree.for_each_edge(&mut |parent, e| ok &= e.node.rz.is_subset(&parent.rz));
    ok
}

/// Same-pattern variants of `p` on `z`: every filling of the outside when
/// the board is at most 4x4 and that is cheap, otherwise random legal
/// perturbations of up to four outside grids.
pub fn perturbations<R: Rules>(rules: &R, p: &R::Pos, z: &Zone, samples: usize, seed: u64) -> Vec<R::Pos> {
    let outside: Vec<Grid> = z.complement().grids().collect();
    if rules.size(p) <= 4 && outside.len() <= 9 {
        return same_pattern_positions(rules, p, z, 20_000, seed);
    }
    if outside.is_empty() {
        return vec![*p];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = [CellState::Empty, CellState::Black, CellState::White];
    let mut out = vec![*p];
    for _ in 0..samples * 20 {
        if out.len() > samples {
            break;
        }
        let mut b = *rules.board(p);
        for _ in 0..rng.gen_range(1..=4) {
            let g = outside[rng.gen_range(0..outside.len())];
            b.set(g, states[rng.gen_range(0..3)]);
        }
        if let Some(q) = rules.make(b, rules.to_move(p)) {
            out.push(q);
        }
    }
    out
}

/// Replays `tree` on the root and on perturbations of it. Returns the
/// number of positions checked, or the first failing board.
pub fn replay_audit<R: Rules>(rules: &R, root: &R::Pos, tree: &RzstNode, samples: usize) -> Result<usize, String> {
    let opts = ReplayOptions::default();
    let cands = perturbations(rules, root, &tree.rz, samples, tree.hash);
    for q in &cands {
        match verify_replay(rules, tree, root, q, &opts) {
            Ok(true) => {}
            Ok(false) => return Err(format!("replay failed on\n{}", rules.board(q).render(Some(&tree.rz)))),
            Err(e) => return Err(format!("{e} on\n{}", rules.board(q).render(Some(&tree.rz)))),
        }
    }
    Ok(cands.len())
}

/// Checks the consistent-replay conditions at every node of the tree
/// against same-pattern positions: all fillings up to `cap`, else `cap`
/// random ones. Only meaningful on boards up to 5x5.
pub fn cr_audit<R: Rules>(rules: &R, root: &R::Pos, tree: &RzstNode, cap: usize) -> Result<usize, String> {
    let mut checked = 0;
    for (p, node) in tree_positions(rules, root, tree) {
        for q in same_pattern_positions(rules, &p, &node.rz, cap, node.hash) {
            checked += 1;
            match check_cr_conditions(rules, &p, node, &q) {
                Ok(true) => {}
                _ => {
                    return Err(format!(
                        "{:?} node fails on\n{}from\n{}",
                        node.kind,
                        rules.board(&q).render(Some(&node.rz)),
                        rules.board(&p).render(Some(&node.rz))
                    ))
                }
            }
        }
    }
    Ok(checked)
}

/// Solves and returns the proof tree, panicking unless the result is a win.
pub fn won<R: Rules>(rules: &R, p: &R::Pos, cfg: &SolverConfig) -> (SolveResult, Arc<RzstNode>) {
    let r = achieve_goal(rules, p, cfg);
    assert_eq!(r.status, Status::Win, "expected a win");
    let t = r.tree.clone().expect("a win carries a tree");
    (r, t)
}

/// Prints the one-line verdict of an acceptance criterion and fails the
/// test if it did not hold.
pub fn report(n: u32, title: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("criterion {n} ({title}): PASS - {detail}"),
        Err(why) => {
            println!("criterion {n} ({title}): FAIL - {why}");
            panic!("criterion {n} failed: {why}");
        }
    }
}
