//! Structural properties, written once and driven both by the proptest
//! target and by the acceptance run.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rzs_core::benson::{regions, unconditionally_alive};
use rzs_core::problem::{parse_hex, parse_sgf, to_hex_text, to_sgf};
use rzs_core::rzone::{apply_dl1, dilate_and, dilate_or};
use rzs_core::solver::{
    check_cr_conditions, parse_proof, proof_header, same_pattern_positions, write_proof, RzstNode,
};
use rzs_core::*;
use std::result::Result;

use super::zz1_holds;

pub type Prop = Result<(), TestCaseError>;

/// Cell codes: 0 empty, 1 black, 2 white. Half empty, so that most
/// boards are legal.
pub fn cells(size: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop_oneof![2 => Just(0u8), 1 => Just(1u8), 1 => Just(2u8)], size * size)
}

/// Mostly-white boards with some black, so that White often has UCA groups.
pub fn white_heavy(size: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop_oneof![3 => Just(0u8), 6 => Just(2u8), 1 => Just(1u8)], size * size)
}

pub fn player() -> impl Strategy<Value = Player> {
    prop_oneof![Just(Player::Black), Just(Player::White)]
}

pub fn board_of(size: usize, cells: &[u8]) -> Board {
    let mut b = Board::new(size).unwrap();
    for (i, &c) in cells.iter().enumerate() {
        let s = match c {
            1 => CellState::Black,
            2 => CellState::White,
            _ => CellState::Empty,
        };
        b.set(Grid::from_index(i, size), s);
    }
    b
}

fn position(size: usize, cells: &[u8], to_move: Player) -> Result<Position, TestCaseError> {
    Position::new(board_of(size, cells), to_move).map_err(|_| TestCaseError::reject("illegal board"))
}

fn zone_of(size: usize, mask: u64) -> Zone {
    Zone::from_grids(size, (0..size * size).filter(|i| mask >> i & 1 == 1).map(|i| Grid::from_index(i, size)))
}

fn dl1_holds(b: &Board, z: &Zone) -> bool {
    rzs_core::board::blocks(b)
        .iter()
        .all(|bl| !bl.stones.intersects(&z.bits()) || bl.liberties.intersects(&z.bits()))
}

/// ZZ-1 on whatever the solver proves on a random small kill-all board.
pub fn zz1(size: usize, cells: &[u8], to_move: Player) -> Prop {
    let p = position(size, cells, to_move)?;
    let mut cfg = SolverConfig::default();
    cfg.budget.max_nodes = 3_000;
    cfg.budget.max_depth = 12;
    let r = achieve_goal(&GoRules::killall(Player::White), &p, &cfg);
    if let Some(t) = &r.tree {
        prop_assert!(zz1_holds(t), "child zone outside parent zone");
        prop_assert_eq!(Some(t.rz), r.rz);
    }
    Ok(())
}

/// AND dilation contains its input, is idempotent and satisfies DL-1;
/// OR dilation does the same for some legal move.
pub fn dilation(size: usize, cells: &[u8], to_move: Player, mask: u64, pick: usize) -> Prop {
    let p = position(size, cells, to_move)?;
    let z = zone_of(size, mask);
    let d = dilate_and(&p, &z);
    prop_assert!(z.is_subset(&d));
    prop_assert_eq!(dilate_and(&p, &d), d);
    prop_assert!(dl1_holds(p.board(), &d));
    let dl = apply_dl1(p.board(), &z);
    prop_assert!(z.is_subset(&dl) && dl1_holds(p.board(), &dl));
    prop_assert_eq!(apply_dl1(p.board(), &dl), dl);

    let moves: Vec<Move> = p
        .legal_moves(PassPolicy::for_players(to_move, false, false))
        .into_iter()
        .filter(|m| m.grid().is_some())
        .collect();
    if moves.is_empty() {
        return Ok(());
    }
    let mv = moves[pick % moves.len()];
    let mut z_u = z;
    z_u.insert(mv.grid().unwrap());
    let o = dilate_or(&p, mv, &z_u).unwrap();
    prop_assert!(z_u.is_subset(&o));
    prop_assert_eq!(dilate_or(&p, mv, &o).unwrap(), o);
    prop_assert!(dl1_holds(p.board(), &o));
    prop_assert!(dl1_holds(p.play(mv).unwrap().board(), &o));
    Ok(())
}

/// Benson's fixpoint, removing one failing block at a time in random order.
fn benson_one_by_one(b: &Board, player: Player, rng: &mut ChaCha8Rng) -> Vec<Bits> {
    let blocks = b.blocks_of(player);
    let regs = regions(b, player);
    let mut alive: Vec<usize> = (0..blocks.len()).collect();
    loop {
        let stones = alive.iter().fold(Bits::EMPTY, |acc, &i| acc | blocks[i].stones);
        let mut failing: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&i| {
                regs.iter()
                    .filter(|r| r.is_vital_to(&blocks[i], b) && r.bordering.is_subset(&stones))
                    .count()
                    < 2
            })
            .collect();
        if failing.is_empty() {
            let mut out: Vec<Bits> = alive.iter().map(|&i| blocks[i].stones).collect();
            out.sort_by_key(|s| s.lowest());
            return out;
        }
        failing.shuffle(rng);
        alive.retain(|&i| i != failing[0]);
    }
}

pub fn benson_order(size: usize, cells: &[u8], seed: u64) -> Prop {
    let b = board_of(size, cells);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for player in [Player::Black, Player::White] {
        let mut want: Vec<Bits> = unconditionally_alive(&b, player).iter().map(|bl| bl.stones).collect();
        want.sort_by_key(|s| s.lowest());
        for _ in 0..3 {
            prop_assert_eq!(&benson_one_by_one(&b, player, &mut rng), &want);
        }
    }
    Ok(())
}

/// Unconditionally alive stones survive any sequence of attacker moves
/// while the defender passes.
pub fn uca_survives(size: usize, cells: &[u8], playouts: usize, seed: u64) -> Prop {
    let b = board_of(size, cells);
    if !b.is_legal() {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for defender in [Player::Black, Player::White] {
        let alive = unconditionally_alive(&b, defender)
            .iter()
            .fold(Bits::EMPTY, |acc, bl| acc | bl.stones);
        if alive.is_empty() {
            continue;
        }
        let attacker = defender.opponent();
        for _ in 0..playouts {
            let mut board = b;
            for _ in 0..3 * size * size {
                let empties = board.grids_of(board.empty_bits());
                let legal: Vec<(Board, Bits)> =
                    empties.iter().filter_map(|&g| board.place(attacker, g).ok()).collect();
                let Some((next, captured)) = legal.choose(&mut rng).copied() else { break };
                prop_assert!(!captured.intersects(&alive), "UCA stone captured");
                board = next;
            }
            prop_assert!(alive.is_subset(&board.stones(defender)));
        }
    }
    Ok(())
}

/// Incremental hashes equal recomputed ones along random games.
pub fn hashes(size: usize, seed: u64) -> Prop {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Position::empty(size, Player::Black).unwrap();
    let mut h = HexPosition::empty(size, Player::Black).unwrap();
    for _ in 0..4 * size * size {
        let moves = p.legal_moves(PassPolicy::for_players(Player::White, true, true));
        let mv = *moves.choose(&mut rng).unwrap();
        p = p.play(mv).unwrap();
        prop_assert_eq!(p.hash(), p.hash_from_scratch());
        if let Some(&g) = h.legal_moves().choose(&mut rng) {
            h = h.play(g).unwrap();
            prop_assert_eq!(h.hash(), h.hash_from_scratch());
        }
    }
    Ok(())
}

/// SGF and Hex text survive a write/read cycle; so does the board render.
pub fn problem_round_trip(size: usize, cells: &[u8], to_move: Player, crucial_pick: usize) -> Prop {
    let b = board_of(size, cells);
    let black = b.grids_of(b.stones(Player::Black));
    let white = b.grids_of(b.stones(Player::White));
    let (game, crucial) = if white.is_empty() {
        (GameKind::KillAll, vec![])
    } else {
        (GameKind::Go, vec![white[crucial_pick % white.len()]])
    };
    let spec = ProblemSpec {
        game,
        size,
        black: black.clone(),
        white: white.clone(),
        to_move,
        crucial: crucial.clone(),
        target: None,
        source: Some("random [test] board".into()),
        warnings: vec![],
    };
    prop_assert_eq!(&parse_sgf(&to_sgf(&spec)).unwrap(), &spec);

    if let Some(&c) = black.first() {
        let hex = ProblemSpec {
            game: GameKind::Hex,
            crucial: vec![c],
            target: Some(HexTarget::Side(Side::Top)),
            source: Some("random board".into()),
            ..spec.clone()
        };
        prop_assert_eq!(&parse_hex(&to_hex_text(&hex).unwrap()).unwrap(), &hex);
    }

    let z = Zone::from_grids(size, crucial.iter().copied().chain(black.iter().take(2).copied()));
    let text = b.render(Some(&z));
    prop_assert_eq!(Board::parse_render(&text).unwrap(), (b, z));
    Ok(())
}

/// A proof file reads back into the same tree and writes out identically;
/// solving twice gives the same bytes.
pub fn proof_round_trip(size: usize, cells: &[u8], to_move: Player) -> Prop {
    let p = position(size, cells, to_move)?;
    let rules = GoRules::killall(Player::White);
    let mut cfg = SolverConfig::default();
    cfg.budget.max_nodes = 3_000;
    cfg.budget.max_depth = 12;
    let r = achieve_goal(&rules, &p, &cfg);
    let Some(t) = &r.tree else { return Ok(()) };
    let text = write_proof(&proof_header(&rules, &p, &cfg, &r), t);
    let (header, back) = parse_proof(&text, &rules, &p).unwrap();
    prop_assert_eq!(&back, &**t);
    prop_assert_eq!(&write_proof(&header, &back), &text);
    let again = achieve_goal(&rules, &p, &cfg);
    let text2 = write_proof(&proof_header(&rules, &p, &cfg, &again), again.tree.as_ref().unwrap());
    prop_assert_eq!(text2, text);
    Ok(())
}

/// Growing a proven root zone by one grid and re-dilating keeps the
/// replay conditions at the root.
pub fn superset_zone(size: usize, cells: &[u8], to_move: Player, extra: usize, seed: u64) -> Prop {
    let p = position(size, cells, to_move)?;
    let rules = GoRules::killall(Player::White);
    let mut cfg = SolverConfig::default();
    cfg.budget.max_nodes = 3_000;
    cfg.budget.max_depth = 12;
    let r = achieve_goal(&rules, &p, &cfg);
    let Some(t) = &r.tree else { return Ok(()) };
    let mut z = t.rz;
    z.insert(Grid::from_index(extra % (size * size), size));
    let z = match t.winning_move() {
        Some(mv) => dilate_or(&p, mv, &z).unwrap(),
        None => dilate_and(&p, &z),
    };
    let node = RzstNode { rz: z, ..(**t).clone() };
    for q in same_pattern_positions(&rules, &p, &z, 200, seed) {
        prop_assert_eq!(check_cr_conditions(&rules, &p, &node, &q), Ok(true));
    }
    Ok(())
}

/// Proptest-style driver for the acceptance run: `cases` random inputs.
pub fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Prop) -> Result<(), String> {
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig {
        cases,
        max_global_rejects: cases * 50,
        failure_persistence: None,
        ..ProptestConfig::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}
