//! Go rules: board state, blocks and liberties, captures, suicide, hashing.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RzsError};
use crate::grid::{check_size, CellState, Grid, Move, Player, MAX_SIZE};
use crate::zone::{Bits, Geometry, Zone, ZonePattern};

struct Zobrist {
    stones: [[u64; MAX_SIZE * MAX_SIZE]; 2],
    white_to_move: u64,
}

fn zobrist() -> &'static Zobrist {
    static TABLE: OnceLock<Zobrist> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x525a_5354);
        let mut stones = [[0u64; MAX_SIZE * MAX_SIZE]; 2];
        for side in stones.iter_mut() {
            for k in side.iter_mut() {
                *k = rng.gen();
            }
        }
        Zobrist {
            stones,
            white_to_move: rng.gen(),
        }
    })
}

pub(crate) fn stone_key(player: Player, idx: usize) -> u64 {
    zobrist().stones[player.index()][idx]
}

pub(crate) fn turn_key(player: Player) -> u64 {
    match player {
        Player::Black => 0,
        Player::White => zobrist().white_to_move,
    }
}

/// Cell contents of an `n x n` board. Shared by the Go and Hex rule sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Board {
    size: u8,
    black: Bits,
    white: Bits,
}

impl Board {
    pub fn new(size: usize) -> Result<Board> {
        check_size(size)?;
        Ok(Board {
            size: size as u8,
            black: Bits::EMPTY,
            white: Bits::EMPTY,
        })
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn geometry(&self) -> &'static Geometry {
        Geometry::get(self.size())
    }

    pub fn stones(&self, player: Player) -> Bits {
        match player {
            Player::Black => self.black,
            Player::White => self.white,
        }
    }

    pub fn occupied(&self) -> Bits {
        self.black | self.white
    }

    pub fn empty_bits(&self) -> Bits {
        self.geometry().all & !self.occupied()
    }

    pub fn get(&self, g: Grid) -> CellState {
        let i = g.index(self.size());
        if self.black.get(i) {
            CellState::Black
        } else if self.white.get(i) {
            CellState::White
        } else {
            CellState::Empty
        }
    }

    /// Raw cell write; performs no capture processing.
    pub fn set(&mut self, g: Grid, c: CellState) {
        let i = g.index(self.size());
        self.black.clear(i);
        self.white.clear(i);
        match c {
            CellState::Black => self.black.set(i),
            CellState::White => self.white.set(i),
            CellState::Empty => {}
        }
    }

    pub(crate) fn set_stones(&mut self, player: Player, bits: Bits) {
        match player {
            Player::Black => self.black = bits,
            Player::White => self.white = bits,
        }
    }

    pub fn stone_count(&self, player: Player) -> usize {
        self.stones(player).count()
    }

    /// Zobrist digest of the stones alone.
    pub fn stones_hash(&self) -> u64 {
        let mut h = 0;
        for p in [Player::Black, Player::White] {
            for i in self.stones(p).ones() {
                h ^= stone_key(p, i);
            }
        }
        h
    }

    /// Restriction of the board to `z`.
    pub fn zone_pattern(&self, z: &Zone) -> ZonePattern {
        ZonePattern::new(*z, self.black, self.white)
    }

    fn grid_at(&self, i: usize) -> Grid {
        Grid::from_index(i, self.size())
    }

    /// 4-connected block containing the stone at `idx`.
    pub fn block_at(&self, idx: usize) -> Option<Block> {
        let owner = if self.black.get(idx) {
            Player::Black
        } else if self.white.get(idx) {
            Player::White
        } else {
            return None;
        };
        let geo = self.geometry();
        let stones = geo.flood(Bits::single(idx), self.stones(owner), false);
        let liberties = geo.neighbors4(stones) & self.empty_bits();
        Some(Block {
            owner,
            stones,
            liberties,
        })
    }

    /// All blocks of one player, ordered by their lowest grid.
    pub fn blocks_of(&self, player: Player) -> Vec<Block> {
        let geo = self.geometry();
        let empty = self.empty_bits();
        geo.components(self.stones(player), false)
            .into_iter()
            .map(|stones| Block {
                owner: player,
                liberties: geo.neighbors4(stones) & empty,
                stones,
            })
            .collect()
    }

    /// Blocks of `player` having a stone adjacent to some grid of `area`.
    pub fn blocks_touching(&self, player: Player, area: Bits) -> Vec<Block> {
        let around = self.geometry().neighbors4(area);
        self.blocks_of(player)
            .into_iter()
            .filter(|b| b.stones.intersects(&around))
            .collect()
    }

    /// Every block on the board has at least one liberty.
    pub fn is_legal(&self) -> bool {
        !self.black.intersects(&self.white)
            && [Player::Black, Player::White]
                .iter()
                .all(|&p| self.blocks_of(p).iter().all(|b| !b.liberties.is_empty()))
    }

    /// Places a stone for `player` at `g` under Go rules, returning the
    /// board and the captured opponent stones.
    pub fn place(&self, player: Player, g: Grid) -> Result<(Board, Bits)> {
        if !g.on_board(self.size()) {
            return Err(RzsError::OffBoard(g.to_string()));
        }
        let idx = g.index(self.size());
        if self.occupied().get(idx) {
            return Err(RzsError::OccupiedGrid(g.to_string()));
        }
        let geo = self.geometry();
        let mut next = *self;
        let mut own = next.stones(player);
        own.set(idx);
        next.set_stones(player, own);

        let opp = player.opponent();
        let adjacent_opp = geo.neighbors4(Bits::single(idx)) & next.stones(opp);
        let mut captured = Bits::EMPTY;
        let mut seen = Bits::EMPTY;
        let empty = next.empty_bits();
        for i in adjacent_opp.ones() {
            if seen.get(i) {
                continue;
            }
            let block = geo.flood(Bits::single(i), next.stones(opp), false);
            seen |= block;
            if !geo.neighbors4(block).intersects(&empty) {
                captured |= block;
            }
        }
        if !captured.is_empty() {
            let remaining = next.stones(opp) & !captured;
            next.set_stones(opp, remaining);
        } else {
            let mine = geo.flood(Bits::single(idx), own, false);
            if !geo.neighbors4(mine).intersects(&next.empty_bits()) {
                return Err(RzsError::SuicideMove(g.to_string()));
            }
        }
        Ok((next, captured))
    }

    /// Rows top to bottom using `X`, `O`, `.`.
    pub fn to_rows(&self) -> Vec<String> {
        let n = self.size();
        (0..n)
            .rev()
            .map(|r| (0..n).map(|c| self.get(Grid::new(c, r)).symbol()).collect())
            .collect()
    }

    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Board> {
        let n = rows.len();
        let mut b = Board::new(n)?;
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<char> = row.as_ref().chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != n {
                return Err(RzsError::Parse(format!(
                    "board row {} has {} cells, expected {n}",
                    i + 1,
                    cells.len()
                )));
            }
            for (c, ch) in cells.into_iter().enumerate() {
                let cell = match ch {
                    'X' | 'x' | 'B' => CellState::Black,
                    'O' | 'o' | 'W' => CellState::White,
                    '.' | '+' | '-' => CellState::Empty,
                    other => return Err(RzsError::Parse(format!("bad board character `{other}`"))),
                };
                b.set(Grid::new(c, n - 1 - i), cell);
            }
        }
        Ok(b)
    }

    /// ASCII rendering with coordinates. Grids of `overlay` print as `#`
    /// when empty and in lower case when occupied, so the zone can be read
    /// back with [`Board::parse_render`].
    pub fn render(&self, overlay: Option<&Zone>) -> String {
        let n = self.size();
        let letters: String = (0..n)
            .map(|c| Grid::new(c, 0).to_string().chars().next().unwrap())
            .map(|ch| format!(" {ch}"))
            .collect();
        let mut out = format!("  {letters}\n");
        for r in (0..n).rev() {
            out.push_str(&format!("{:>2}", r + 1));
            for c in 0..n {
                let g = Grid::new(c, r);
                let mut ch = self.get(g).symbol();
                if overlay.is_some_and(|z| z.contains(g)) {
                    ch = if ch == '.' { '#' } else { ch.to_ascii_lowercase() };
                }
                out.push(' ');
                out.push(ch);
            }
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Board::render`] with an overlay.
    pub fn parse_render(text: &str) -> Result<(Board, Zone)> {
        let rows: Vec<String> = text
            .lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let cells = l.get(2..).unwrap_or("");
                cells.split_whitespace().collect::<String>()
            })
            .collect();
        let plain: Vec<String> = rows
            .iter()
            .map(|r| r.replace('#', ".").to_ascii_uppercase())
            .collect();
        let zone_rows: Vec<String> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| if c == '#' || c.is_ascii_lowercase() { '#' } else { '.' })
                    .collect()
            })
            .collect();
        Ok((Board::from_rows(&plain)?, Zone::from_rows(&zone_rows)?))
    }

    pub fn grids_of(&self, bits: Bits) -> Vec<Grid> {
        bits.ones().map(|i| self.grid_at(i)).collect()
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\n{}", self.to_rows().join("\n"))
    }
}

/// A maximal 4-connected group of same-coloured stones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub owner: Player,
    pub stones: Bits,
    pub liberties: Bits,
}

impl Block {
    pub fn stone_grids(&self, size: usize) -> Vec<Grid> {
        self.stones.ones().map(|i| Grid::from_index(i, size)).collect()
    }

    pub fn liberty_count(&self) -> usize {
        self.liberties.count()
    }
}

/// Whether each side may pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PassPolicy {
    pub black: bool,
    pub white: bool,
}

impl PassPolicy {
    pub const NONE: PassPolicy = PassPolicy {
        black: false,
        white: false,
    };

    /// Pass enabled for the AND-player only.
    pub fn and_only(or_player: Player) -> PassPolicy {
        PassPolicy::for_players(or_player, false, true)
    }

    pub fn for_players(or_player: Player, or_pass: bool, and_pass: bool) -> PassPolicy {
        match or_player {
            Player::White => PassPolicy {
                white: or_pass,
                black: and_pass,
            },
            Player::Black => PassPolicy {
                black: or_pass,
                white: and_pass,
            },
        }
    }

    pub fn allows(&self, p: Player) -> bool {
        match p {
            Player::Black => self.black,
            Player::White => self.white,
        }
    }
}

/// A Go position: board plus player to move, with an incrementally kept hash.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    board: Board,
    to_move: Player,
    hash: u64,
}

impl Position {
    /// Validates the board (every block needs a liberty).
    pub fn new(board: Board, to_move: Player) -> Result<Position> {
        if !board.is_legal() {
            return Err(RzsError::InconsistentSetup(
                "a block without liberties".into(),
            ));
        }
        Ok(Position::from_parts(board, to_move))
    }

    pub(crate) fn from_parts(board: Board, to_move: Player) -> Position {
        Position {
            hash: board.stones_hash() ^ turn_key(to_move),
            board,
            to_move,
        }
    }

    pub fn empty(size: usize, to_move: Player) -> Result<Position> {
        Ok(Position::from_parts(Board::new(size)?, to_move))
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn size(&self) -> usize {
        self.board.size()
    }

    pub fn hash(&self) -> u64 {
        self.hash
    }

    /// Hash recomputed from the cells, for checking the incremental one.
    pub fn hash_from_scratch(&self) -> u64 {
        self.board.stones_hash() ^ turn_key(self.to_move)
    }

    pub fn play(&self, m: Move) -> Result<Position> {
        self.play_with_captures(m).map(|(p, _)| p)
    }

    /// Plays `m`, also returning the stones it captured.
    pub fn play_with_captures(&self, m: Move) -> Result<(Position, Bits)> {
        let me = self.to_move;
        let opp = me.opponent();
        let mut hash = self.hash ^ turn_key(me) ^ turn_key(opp);
        match m {
            Move::Pass => Ok((
                Position {
                    board: self.board,
                    to_move: opp,
                    hash,
                },
                Bits::EMPTY,
            )),
            Move::Place(g) => {
                let (board, captured) = self.board.place(me, g)?;
                hash ^= stone_key(me, g.index(self.size()));
                for i in captured.ones() {
                    hash ^= stone_key(opp, i);
                }
                Ok((
                    Position {
                        board,
                        to_move: opp,
                        hash,
                    },
                    captured,
                ))
            }
        }
    }

    pub fn is_legal_move(&self, m: Move, pass: PassPolicy) -> bool {
        match m {
            Move::Pass => pass.allows(self.to_move),
            Move::Place(g) => self.board.place(self.to_move, g).is_ok(),
        }
    }

    /// Placements on empty non-suicide grids in row-major order, then Pass
    /// if the policy allows it for the player to move.
    pub fn legal_moves(&self, pass: PassPolicy) -> Vec<Move> {
        let mut out: Vec<Move> = self
            .board
            .empty_bits()
            .ones()
            .map(|i| Grid::from_index(i, self.size()))
            .filter(|&g| self.board.place(self.to_move, g).is_ok())
            .map(Move::Place)
            .collect();
        if pass.allows(self.to_move) {
            out.push(Move::Pass);
        }
        out
    }

    pub fn zone_pattern(&self, z: &Zone) -> ZonePattern {
        self.board.zone_pattern(z)
    }

    pub fn blocks(&self) -> Vec<Block> {
        blocks(&self.board)
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}\n{} to move", self.board, self.to_move)
    }
}

/// All blocks of both colours, Black's first.
pub fn blocks(b: &Board) -> Vec<Block> {
    let mut out = b.blocks_of(Player::Black);
    out.extend(b.blocks_of(Player::White));
    out
}
