//! Problem files: a single-node SGF subset for Go and a small text format
//! for Hex.
//!
//! SGF properties understood: `SZ`, `AB`, `AW`, `PL`, `MA` (crucial stones),
//! `RU` (`killall` or `go`), `GN`/`SO`/`C` (kept as the source note). `KM`
//! is accepted and ignored with a warning; other properties are ignored.
//! Without `MA` a Go problem is kill-all with White defending.
//!
//! Hex text format:
//!
//! ```text
//! size 4
//! ....
//! ..O.
//! ....
//! ....
//! crucial: C3
//! target: bottom
//! to_move: B
//! ```
//!
//! `target` is a side name or a list of grids; `to_move` is optional and
//! defaults to Black when Black has no more stones than White.

use std::fmt::Write as _;

use crate::benson::GoGoal;
use crate::board::{Board, PassPolicy, Position};
use crate::error::{Result, RzsError};
use crate::grid::{check_size, CellState, Grid, Player};
use crate::hexgame::{HexGoal, HexPosition, HexTarget};
use crate::rules::{GoRules, HexRules, Rules};
use crate::solver::{achieve_goal, proof_header, write_header, write_proof, SolveResult, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameKind {
    Go,
    KillAll,
    Hex,
}

impl GameKind {
    pub fn name(self) -> &'static str {
        match self {
            GameKind::Go => "go",
            GameKind::KillAll => "killall",
            GameKind::Hex => "hex",
        }
    }
}

impl std::str::FromStr for GameKind {
    type Err = RzsError;

    fn from_str(s: &str) -> Result<GameKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "go" => Ok(GameKind::Go),
            "killall" | "kill-all" | "killall-go" => Ok(GameKind::KillAll),
            "hex" => Ok(GameKind::Hex),
            other => Err(RzsError::Parse(format!("unknown rules `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub game: GameKind,
    pub size: usize,
    pub black: Vec<Grid>,
    pub white: Vec<Grid>,
    pub to_move: Player,
    pub crucial: Vec<Grid>,
    /// Hex only.
    pub target: Option<HexTarget>,
    pub source: Option<String>,
    /// Non-fatal remarks from parsing, such as ignored properties.
    pub warnings: Vec<String>,
}

/// A ready-to-search problem.
#[derive(Clone, Debug)]
pub enum Instance {
    Go(GoRules, Position),
    Hex(HexRules, HexPosition),
}

impl ProblemSpec {
    pub fn board(&self) -> Result<Board> {
        let mut b = Board::new(self.size)?;
        for (stones, cell) in [(&self.black, CellState::Black), (&self.white, CellState::White)] {
            for &g in stones {
                if !g.on_board(self.size) {
                    return Err(RzsError::OffBoard(g.to_string()));
                }
                if b.get(g) != CellState::Empty {
                    return Err(RzsError::InconsistentSetup(format!("{g} set twice")));
                }
                b.set(g, cell);
            }
        }
        Ok(b)
    }

    fn owner_of(&self, g: Grid) -> Option<Player> {
        if self.black.contains(&g) {
            Some(Player::Black)
        } else if self.white.contains(&g) {
            Some(Player::White)
        } else {
            None
        }
    }

    /// The OR-player: owner of the crucial stones, White in kill-all.
    pub fn defender(&self) -> Result<Player> {
        if self.game == GameKind::KillAll {
            return Ok(Player::White);
        }
        let first = *self
            .crucial
            .first()
            .ok_or_else(|| RzsError::InconsistentSetup("no crucial stones marked".into()))?;
        let owner = self
            .owner_of(first)
            .ok_or_else(|| RzsError::InconsistentSetup(format!("crucial grid {first} is empty")))?;
        for &g in &self.crucial {
            if self.owner_of(g) != Some(owner) {
                return Err(RzsError::InconsistentSetup(format!(
                    "crucial grid {g} does not hold a {owner} stone"
                )));
            }
        }
        Ok(owner)
    }

    /// Builds rules and the root position. `pass_and` enables passing for
    /// the AND-player in Go.
    pub fn instance(&self, pass_and: bool) -> Result<Instance> {
        let board = self.board()?;
        let defender = self.defender()?;
        match self.game {
            GameKind::Go | GameKind::KillAll => {
                let goal = if self.game == GameKind::KillAll {
                    GoGoal::KillAllDefense { defender }
                } else {
                    GoGoal::CrucialSafety {
                        defender,
                        crucial: self.crucial.clone(),
                    }
                };
                let pass = PassPolicy::for_players(defender, false, pass_and);
                let p = Position::new(board, self.to_move)?;
                Ok(Instance::Go(GoRules::with_pass(goal, pass), p))
            }
            GameKind::Hex => {
                let target = self
                    .target
                    .clone()
                    .ok_or_else(|| RzsError::InconsistentSetup("hex problem without target".into()))?;
                let goal = HexGoal {
                    player: defender,
                    crucial: self.crucial.clone(),
                    target,
                };
                Ok(Instance::Hex(HexRules::new(goal), HexPosition::new(board, self.to_move)))
            }
        }
    }
}

impl Instance {
    pub fn board(&self) -> &Board {
        match self {
            Instance::Go(_, p) => p.board(),
            Instance::Hex(_, p) => p.board(),
        }
    }

    pub fn solve(&self, cfg: &SolverConfig) -> SolveResult {
        match self {
            Instance::Go(r, p) => achieve_goal(r, p, cfg),
            Instance::Hex(r, p) => achieve_goal(r, p, cfg),
        }
    }

    /// Proof file text for a finished run: header, then the tree if won.
    pub fn proof_text(&self, cfg: &SolverConfig, res: &SolveResult) -> String {
        fn text<R: Rules>(r: &R, p: &R::Pos, cfg: &SolverConfig, res: &SolveResult) -> String {
            let header = proof_header(r, p, cfg, res);
            match &res.tree {
                Some(t) => write_proof(&header, t),
                None => write_header(&header),
            }
        }
        match self {
            Instance::Go(r, p) => text(r, p, cfg, res),
            Instance::Hex(r, p) => text(r, p, cfg, res),
        }
    }
}

struct SgfReader<'a> {
    src: &'a [u8],
    at: usize,
}

impl<'a> SgfReader<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(RzsError::MalformedSgf {
            offset: self.at,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.at < self.src.len() && self.src[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.at).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            self.err(&format!("expected `{}`", c as char))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_uppercase() {
            self.at += 1;
        }
        if start == self.at {
            return self.err("expected a property name");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.at]).into_owned())
    }

    fn value(&mut self) -> Result<(usize, String)> {
        self.expect(b'[')?;
        let start = self.at;
        let mut out = Vec::new();
        loop {
            match self.src.get(self.at) {
                None => {
                    self.at = start;
                    return self.err("unterminated value");
                }
                Some(b'\\') => {
                    if let Some(&c) = self.src.get(self.at + 1) {
                        out.push(c);
                    }
                    self.at += 2;
                }
                Some(b']') => {
                    self.at += 1;
                    return Ok((start, String::from_utf8_lossy(&out).into_owned()));
                }
                Some(&c) => {
                    out.push(c);
                    self.at += 1;
                }
            }
        }
    }
}

type Props = Vec<(String, Vec<(usize, String)>)>;

fn read_sgf_node(text: &str) -> Result<Props> {
    let mut r = SgfReader {
        src: text.as_bytes(),
        at: 0,
    };
    if r.peek().is_none() {
        return r.err("empty input");
    }
    r.expect(b'(')?;
    r.expect(b';')?;
    let mut props: Props = Vec::new();
    while let Some(c) = r.peek() {
        if !c.is_ascii_uppercase() {
            break;
        }
        let name = r.ident()?;
        let mut values = Vec::new();
        while r.peek() == Some(b'[') {
            values.push(r.value()?);
        }
        if values.is_empty() {
            return r.err(&format!("property {name} has no value"));
        }
        props.push((name, values));
    }
    match r.peek() {
        Some(b')') => r.at += 1,
        Some(b';') | Some(b'(') => return r.err("only single-node SGF is supported"),
        _ => return r.err("expected `)`"),
    }
    if r.peek().is_some() {
        return r.err("trailing data after the game tree");
    }
    Ok(props)
}

fn sgf_point(v: &str, size: usize, offset: usize) -> Result<Grid> {
    let b = v.as_bytes();
    let bad = || RzsError::MalformedSgf {
        offset,
        msg: format!("bad point `{v}`"),
    };
    if b.len() != 2 || !b[0].is_ascii_lowercase() || !b[1].is_ascii_lowercase() {
        return Err(bad());
    }
    let col = (b[0] - b'a') as usize;
    let from_top = (b[1] - b'a') as usize;
    if col >= size || from_top >= size {
        return Err(bad());
    }
    Ok(Grid::new(col, size - 1 - from_top))
}

fn sgf_points(values: &[(usize, String)], size: usize) -> Result<Vec<Grid>> {
    let mut out = Vec::new();
    for (off, v) in values {
        // compressed rectangles `aa:cc`
        if let Some((a, b)) = v.split_once(':') {
            let p = sgf_point(a, size, *off)?;
            let q = sgf_point(b, size, *off)?;
            for row in p.row().min(q.row())..=p.row().max(q.row()) {
                for col in p.col().min(q.col())..=p.col().max(q.col()) {
                    out.push(Grid::new(col, row));
                }
            }
        } else {
            out.push(sgf_point(v, size, *off)?);
        }
    }
    Ok(out)
}

pub fn parse_sgf(text: &str) -> Result<ProblemSpec> {
    let props = read_sgf_node(text)?;
    let get = |k: &str| props.iter().find(|(n, _)| n == k).map(|(_, v)| v.as_slice());
    let size = match get("SZ") {
        Some([(off, v), ..]) => {
            let n: usize = v.trim().parse().map_err(|_| RzsError::MalformedSgf {
                offset: *off,
                msg: format!("bad size `{v}`"),
            })?;
            check_size(n)?;
            n
        }
        _ => 19,
    };
    let mut warnings = Vec::new();
    let mut black = Vec::new();
    let mut white = Vec::new();
    let mut crucial = Vec::new();
    let mut to_move = Player::Black;
    let mut rules: Option<GameKind> = None;
    let mut source = Vec::new();
    for (name, values) in &props {
        match name.as_str() {
            "AB" => black.extend(sgf_points(values, size)?),
            "AW" => white.extend(sgf_points(values, size)?),
            "MA" => crucial.extend(sgf_points(values, size)?),
            "PL" => {
                let (off, v) = &values[0];
                to_move = v.parse().map_err(|_| RzsError::MalformedSgf {
                    offset: *off,
                    msg: format!("bad player `{v}`"),
                })?;
            }
            "RU" => {
                let (off, v) = &values[0];
                rules = Some(v.parse().map_err(|_| RzsError::MalformedSgf {
                    offset: *off,
                    msg: format!("unknown rules `{v}`"),
                })?);
            }
            "KM" => warnings.push(format!("KM[{}] ignored", values[0].1)),
            "GN" | "SO" | "C" => source.push(values[0].1.clone()),
            _ => {}
        }
    }
    let game = match rules {
        Some(GameKind::Hex) => {
            return Err(RzsError::InconsistentSetup(
                "hex problems use the text format".into(),
            ))
        }
        Some(g) => g,
        None if crucial.is_empty() => GameKind::KillAll,
        None => GameKind::Go,
    };
    let spec = ProblemSpec {
        game,
        size,
        black,
        white,
        to_move,
        crucial,
        target: None,
        source: (!source.is_empty()).then(|| source.join(" / ")),
        warnings,
    };
    spec.board()?;
    if game == GameKind::Go {
        spec.defender()?;
    } else {
        for &g in &spec.crucial {
            if spec.owner_of(g) != Some(Player::White) {
                return Err(RzsError::InconsistentSetup(format!(
                    "crucial grid {g} does not hold a white stone"
                )));
            }
        }
    }
    Ok(spec)
}

fn sgf_coord(g: Grid, size: usize) -> String {
    format!(
        "{}{}",
        (b'a' + g.col() as u8) as char,
        (b'a' + (size - 1 - g.row()) as u8) as char
    )
}

fn sgf_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace(']', "\\]")
}

/// Writes a Go problem back as single-node SGF.
pub fn to_sgf(spec: &ProblemSpec) -> String {
    let mut out = format!("(;FF[4]GM[1]SZ[{}]RU[{}]", spec.size, spec.game.name());
    for (tag, stones) in [("AB", &spec.black), ("AW", &spec.white), ("MA", &spec.crucial)] {
        if !stones.is_empty() {
            out.push_str(tag);
            for &g in stones {
                let _ = write!(out, "[{}]", sgf_coord(g, spec.size));
            }
        }
    }
    let _ = write!(out, "PL[{}]", spec.to_move);
    if let Some(src) = &spec.source {
        let _ = write!(out, "SO[{}]", sgf_escape(src));
    }
    out.push(')');
    out
}

fn parse_grid_list(s: &str, size: usize) -> Result<Vec<Grid>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| Grid::parse(t, size))
        .collect()
}

pub fn parse_hex(text: &str) -> Result<ProblemSpec> {
    let mut size = None;
    let mut rows: Vec<&str> = Vec::new();
    let mut crucial = Vec::new();
    let mut target = None;
    let mut to_move = None;
    let mut source = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("size") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| RzsError::Parse(format!("bad size line `{line}`")))?;
            check_size(n)?;
            size = Some(n);
        } else if let Some((key, value)) = line.split_once(':') {
            let n = size.ok_or_else(|| RzsError::Parse("`size` must come first".into()))?;
            match key.trim() {
                "crucial" => crucial = parse_grid_list(value, n)?,
                "target" => {
                    target = Some(match value.trim().parse() {
                        Ok(side) => HexTarget::Side(side),
                        Err(_) => HexTarget::Stones(parse_grid_list(value, n)?),
                    })
                }
                "to_move" => to_move = Some(value.parse::<Player>()?),
                "source" => source = Some(value.trim().to_string()),
                other => return Err(RzsError::Parse(format!("unknown key `{other}`"))),
            }
        } else {
            rows.push(line);
        }
    }
    let size = size.ok_or_else(|| RzsError::Parse("missing `size` line".into()))?;
    if rows.len() != size {
        return Err(RzsError::Parse(format!(
            "expected {size} board rows, found {}",
            rows.len()
        )));
    }
    let board = Board::from_rows(&rows)?;
    if board.size() != size {
        return Err(RzsError::Parse("row width does not match size".into()));
    }
    let black = board.grids_of(board.stones(Player::Black));
    let white = board.grids_of(board.stones(Player::White));
    let to_move = to_move.unwrap_or(if black.len() <= white.len() {
        Player::Black
    } else {
        Player::White
    });
    if crucial.is_empty() {
        return Err(RzsError::InconsistentSetup("no crucial stones listed".into()));
    }
    let spec = ProblemSpec {
        game: GameKind::Hex,
        size,
        black,
        white,
        to_move,
        crucial,
        target: Some(target.ok_or_else(|| RzsError::Parse("missing `target`".into()))?),
        source,
        warnings: Vec::new(),
    };
    spec.defender()?;
    Ok(spec)
}

pub fn to_hex_text(spec: &ProblemSpec) -> Result<String> {
    let board = spec.board()?;
    let mut out = format!("size {}\n", spec.size);
    for row in board.to_rows() {
        out.push_str(&row);
        out.push('\n');
    }
    let names = |gs: &[Grid]| gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "crucial: {}", names(&spec.crucial));
    match &spec.target {
        Some(HexTarget::Side(s)) => {
            let _ = writeln!(out, "target: {s}");
        }
        Some(HexTarget::Stones(gs)) => {
            let _ = writeln!(out, "target: {}", names(gs));
        }
        None => {}
    }
    let _ = writeln!(out, "to_move: {}", spec.to_move);
    if let Some(src) = &spec.source {
        let _ = writeln!(out, "source: {src}");
    }
    Ok(out)
}

/// Parses either format, telling them apart by the leading `(` of SGF.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    if text.trim_start().starts_with('(') {
        parse_sgf(text)
    } else {
        parse_hex(text)
    }
}
