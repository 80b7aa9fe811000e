//! Relevance-zone solution trees and their text form.
//!
//! One node per line, indented two spaces per depth:
//! `move | kind | null:yes|no | rz:<rows joined by '/'>`. Header lines start
//! with `#` and hold `key: value` pairs. Hashes are not written; the parser
//! recomputes them by replaying the moves from the root position.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Result, RzsError};
use crate::grid::Move;
use crate::rules::Rules;
use crate::zone::Zone;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Or,
    And,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Leaf => "leaf",
            NodeKind::Or => "or",
            NodeKind::And => "and",
        }
    }

    fn parse(s: &str) -> Result<NodeKind> {
        match s {
            "leaf" => Ok(NodeKind::Leaf),
            "or" => Ok(NodeKind::Or),
            "and" => Ok(NodeKind::And),
            other => Err(RzsError::Parse(format!("unknown node kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub mv: Move,
    /// The move lies outside the child's zone and leaves that zone's
    /// pattern unchanged, so it acted like a pass.
    pub null: bool,
    pub node: Arc<RzstNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RzstNode {
    pub hash: u64,
    pub kind: NodeKind,
    pub rz: Zone,
    /// OR nodes have one child; AND nodes one per tried move, in trial order.
    pub children: Vec<Edge>,
}

impl RzstNode {
    pub fn leaf(hash: u64, rz: Zone) -> RzstNode {
        RzstNode {
            hash,
            kind: NodeKind::Leaf,
            rz,
            children: Vec::new(),
        }
    }

    /// Number of nodes when shared subtrees are counted once per use.
    pub fn tree_size(&self) -> usize {
        1 + self.children.iter().map(|e| e.node.tree_size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        self.children.iter().map(|e| 1 + e.node.depth()).max().unwrap_or(0)
    }

    pub fn winning_move(&self) -> Option<Move> {
        match self.kind {
            NodeKind::Or => self.children.first().map(|e| e.mv),
            _ => None,
        }
    }

    pub fn child(&self, m: Move) -> Option<&Edge> {
        self.children.iter().find(|e| e.mv == m)
    }

    /// Calls `f` on every (parent, child) pair, depth first.
    pub fn for_each_edge<F: FnMut(&RzstNode, &Edge)>(&self, f: &mut F) {
        for e in &self.children {
            f(self, e);
            e.node.for_each_edge(f);
        }
    }
}

/// Header of a proof file, as ordered `key: value` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofHeader {
    pub entries: Vec<(String, String)>,
}

impl ProofHeader {
    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Header lines only, for runs without a proof.
pub fn write_header(header: &ProofHeader) -> String {
    let mut out = String::new();
    for (k, v) in &header.entries {
        let _ = writeln!(out, "# {k}: {v}");
    }
    out
}

pub fn write_proof(header: &ProofHeader, root: &RzstNode) -> String {
    let mut out = write_header(header);
    write_node(&mut out, "root", false, root, 0);
    out
}

fn write_node(out: &mut String, mv: &str, null: bool, node: &RzstNode, depth: usize) {
    let _ = writeln!(
        out,
        "{}{} | {} | null:{} | rz:{}",
        "  ".repeat(depth),
        mv,
        node.kind.as_str(),
        if null { "yes" } else { "no" },
        node.rz.to_line()
    );
    for e in &node.children {
        write_node(out, &e.mv.to_string(), e.null, &e.node, depth + 1);
    }
}

struct Line {
    depth: usize,
    mv: Option<Move>,
    null: bool,
    kind: NodeKind,
    rz: Zone,
}

fn parse_line(lineno: usize, raw: &str) -> Result<Line> {
    let bad = |msg: &str| RzsError::Parse(format!("line {lineno}: {msg}"));
    let indent = raw.len() - raw.trim_start_matches(' ').len();
    if !indent.is_multiple_of(2) {
        return Err(bad("odd indentation"));
    }
    let fields: Vec<&str> = raw.trim().split(" | ").collect();
    if fields.len() != 4 {
        return Err(bad("expected four `|`-separated fields"));
    }
    let mv = match fields[0] {
        "root" => None,
        s => Some(s.parse::<Move>().map_err(|e| bad(&e.to_string()))?),
    };
    let null = match fields[2] {
        "null:yes" => true,
        "null:no" => false,
        _ => return Err(bad("bad null field")),
    };
    let rz = fields[3]
        .strip_prefix("rz:")
        .ok_or_else(|| bad("missing rz"))
        .and_then(|s| Zone::from_line(s).map_err(|e| bad(&e.to_string())))?;
    Ok(Line {
        depth: indent / 2,
        mv,
        null,
        kind: NodeKind::parse(fields[1])?,
        rz,
    })
}

/// Parses a proof file, recomputing node hashes by replaying from `root`.
pub fn parse_proof<R: Rules>(
    text: &str,
    rules: &R,
    root: &R::Pos,
) -> Result<(ProofHeader, RzstNode)> {
    let mut header = ProofHeader::default();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        if let Some(h) = raw.strip_prefix('#') {
            let (k, v) = h
                .split_once(':')
                .ok_or_else(|| RzsError::Parse(format!("line {}: bad header", i + 1)))?;
            header.push(k.trim(), v.trim());
        } else {
            lines.push(parse_line(i + 1, raw)?);
        }
    }
    if lines.first().map(|l| (l.depth, l.mv)) != Some((0, None)) {
        return Err(RzsError::Parse("first node must be `root`".into()));
    }
    let mut at = 0;
    let node = build(&lines, &mut at, rules, root)?;
    if at != lines.len() {
        return Err(RzsError::Parse(format!("stray node at entry {}", at + 1)));
    }
    Ok((header, node))
}

fn build<R: Rules>(lines: &[Line], at: &mut usize, rules: &R, pos: &R::Pos) -> Result<RzstNode> {
    let me = &lines[*at];
    let depth = me.depth;
    *at += 1;
    let mut children = Vec::new();
    while *at < lines.len() && lines[*at].depth > depth {
        let line = &lines[*at];
        if line.depth != depth + 1 {
            return Err(RzsError::Parse("indentation skips a level".into()));
        }
        let mv = line
            .mv
            .ok_or_else(|| RzsError::Parse("`root` below the top".into()))?;
        let null = line.null;
        let next = rules.play(pos, mv)?;
        let node = build(lines, at, rules, &next)?;
        children.push(Edge {
            mv,
            null,
            node: Arc::new(node),
        });
    }
    Ok(RzstNode {
        hash: rules.hash(pos),
        kind: me.kind,
        rz: me.rz,
        children,
    })
}
