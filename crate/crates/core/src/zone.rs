//! Fixed-width grid bitsets and the zone algebra built on them.
//!
//! A [`Zone`] is a set of grids on an `n x n` board stored one bit per grid
//! (bit index `row * n + col`), so union and intersection cost a handful of
//! word operations regardless of board size.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Result, RzsError};
use crate::grid::{Grid, MAX_SIZE};

const WORDS: usize = (MAX_SIZE * MAX_SIZE).div_ceil(64);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Bits([u64; WORDS]);

impl Bits {
    pub const EMPTY: Bits = Bits([0; WORDS]);

    pub fn single(idx: usize) -> Bits {
        let mut b = Bits::EMPTY;
        b.set(idx);
        b
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        self.0[idx >> 6] >> (idx & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, idx: usize) {
        self.0[idx >> 6] |= 1 << (idx & 63);
    }

    #[inline]
    pub fn clear(&mut self, idx: usize) {
        self.0[idx >> 6] &= !(1 << (idx & 63));
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn ones(&self) -> Ones {
        Ones {
            bits: *self,
            word: 0,
        }
    }

    fn shl(&self, k: usize) -> Bits {
        let (ws, bs) = (k / 64, k % 64);
        let mut out = [0u64; WORDS];
        for i in (ws..WORDS).rev() {
            let src = i - ws;
            let mut v = self.0[src] << bs;
            if bs > 0 && src > 0 {
                v |= self.0[src - 1] >> (64 - bs);
            }
            out[i] = v;
        }
        Bits(out)
    }

    #[allow(clippy::needless_range_loop)]
    fn shr(&self, k: usize) -> Bits {
        let (ws, bs) = (k / 64, k % 64);
        let mut out = [0u64; WORDS];
        for i in 0..WORDS - ws {
            let src = i + ws;
            let mut v = self.0[src] >> bs;
            if bs > 0 && src + 1 < WORDS {
                v |= self.0[src + 1] << (64 - bs);
            }
            out[i] = v;
        }
        Bits(out)
    }
}

macro_rules! bitop {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident, $op:tt) => {
        impl std::ops::$tr for Bits {
            type Output = Bits;
            #[inline]
            fn $m(self, rhs: Bits) -> Bits {
                let mut out = self;
                for i in 0..WORDS {
                    out.0[i] = self.0[i] $op rhs.0[i];
                }
                out
            }
        }
        impl std::ops::$tra for Bits {
            #[inline]
            fn $ma(&mut self, rhs: Bits) {
                for i in 0..WORDS {
                    self.0[i] = self.0[i] $op rhs.0[i];
                }
            }
        }
    };
}

bitop!(BitOr, bitor, BitOrAssign, bitor_assign, |);
bitop!(BitAnd, bitand, BitAndAssign, bitand_assign, &);
bitop!(BitXor, bitxor, BitXorAssign, bitxor_assign, ^);

impl std::ops::Not for Bits {
    type Output = Bits;
    fn not(self) -> Bits {
        let mut out = self;
        for w in out.0.iter_mut() {
            *w = !*w;
        }
        out
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

pub struct Ones {
    bits: Bits,
    word: usize,
}

impl Iterator for Ones {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = &mut self.bits.0[self.word];
            if *w != 0 {
                let tz = w.trailing_zeros() as usize;
                *w &= *w - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
        }
        None
    }
}

/// Per-size masks used by the bit-parallel neighbour expansion.
pub struct Geometry {
    pub size: usize,
    pub all: Bits,
    not_first_col: Bits,
    not_last_col: Bits,
}

impl Geometry {
    pub fn get(size: usize) -> &'static Geometry {
        static TABLE: OnceLock<Vec<Geometry>> = OnceLock::new();
        &TABLE.get_or_init(|| (0..=MAX_SIZE).map(Geometry::build).collect())[size]
    }

    fn build(size: usize) -> Geometry {
        let mut g = Geometry {
            size,
            all: Bits::EMPTY,
            not_first_col: Bits::EMPTY,
            not_last_col: Bits::EMPTY,
        };
        for idx in 0..size * size {
            g.all.set(idx);
            if idx % size != 0 {
                g.not_first_col.set(idx);
            }
            if idx % size != size - 1 {
                g.not_last_col.set(idx);
            }
        }
        g
    }

    /// Grids 4-adjacent to some grid of `b` (not including `b` itself unless adjacent).
    pub fn neighbors4(&self, b: Bits) -> Bits {
        let n = self.size;
        ((b & self.not_last_col).shl(1)
            | (b & self.not_first_col).shr(1)
            | b.shl(n)
            | b.shr(n))
            & self.all
    }

    /// Hex adjacency: the four orthogonal neighbours plus `(c+1, r+1)` and `(c-1, r-1)`.
    pub fn neighbors6(&self, b: Bits) -> Bits {
        let n = self.size;
        (self.neighbors4(b)
            | (b & self.not_last_col).shl(n + 1)
            | (b & self.not_first_col).shr(n + 1))
            & self.all
    }

    /// Connected component of `within` containing `seed` (4- or 6-adjacency).
    pub fn flood(&self, seed: Bits, within: Bits, hex: bool) -> Bits {
        let mut cur = seed & within;
        loop {
            let grown = if hex {
                self.neighbors6(cur)
            } else {
                self.neighbors4(cur)
            };
            let next = (cur | grown) & within;
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Splits `set` into its connected components, ordered by lowest grid.
    pub fn components(&self, set: Bits, hex: bool) -> Vec<Bits> {
        let mut rest = set;
        let mut out = Vec::new();
        while let Some(idx) = rest.lowest() {
            let comp = self.flood(Bits::single(idx), rest, hex);
            rest &= !comp;
            out.push(comp);
        }
        out
    }
}

/// A set of grids on a board of a given size.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zone {
    size: u8,
    bits: Bits,
}

impl Zone {
    pub fn empty(size: usize) -> Zone {
        Zone {
            size: size as u8,
            bits: Bits::EMPTY,
        }
    }

    pub fn full(size: usize) -> Zone {
        Zone {
            size: size as u8,
            bits: Geometry::get(size).all,
        }
    }

    pub fn from_bits(size: usize, bits: Bits) -> Zone {
        Zone {
            size: size as u8,
            bits: bits & Geometry::get(size).all,
        }
    }

    pub fn from_grids<I: IntoIterator<Item = Grid>>(size: usize, grids: I) -> Zone {
        let mut z = Zone::empty(size);
        for g in grids {
            z.insert(g);
        }
        z
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn bits(&self) -> Bits {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, g: Grid) -> bool {
        g.on_board(self.size()) && self.bits.get(g.index(self.size()))
    }

    /// Pass lies outside every zone.
    pub fn contains_move(&self, m: crate::grid::Move) -> bool {
        m.grid().is_some_and(|g| self.contains(g))
    }

    pub fn insert(&mut self, g: Grid) {
        debug_assert!(g.on_board(self.size()));
        self.bits.set(g.index(self.size()));
    }

    pub fn add_bits(&mut self, b: Bits) {
        self.bits |= b & Geometry::get(self.size()).all;
    }

    pub fn grids(&self) -> impl Iterator<Item = Grid> + '_ {
        let n = self.size();
        self.bits.ones().map(move |i| Grid::from_index(i, n))
    }

    fn check(&self, other: &Zone) -> Result<()> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(RzsError::SizeMismatch(self.size(), other.size()))
        }
    }

    pub fn union(&self, other: &Zone) -> Result<Zone> {
        self.check(other)?;
        Ok(Zone::from_bits(self.size(), self.bits | other.bits))
    }

    pub fn intersect(&self, other: &Zone) -> Result<Zone> {
        self.check(other)?;
        Ok(Zone::from_bits(self.size(), self.bits & other.bits))
    }

    pub fn is_subset(&self, other: &Zone) -> bool {
        self.size == other.size && self.bits.is_subset(&other.bits)
    }

    /// Grids of the board outside the zone.
    pub fn complement(&self) -> Zone {
        Zone::from_bits(self.size(), !self.bits)
    }

    /// Rows top to bottom, `#` for members and `.` otherwise.
    pub fn to_rows(&self) -> Vec<String> {
        let n = self.size();
        (0..n)
            .rev()
            .map(|r| {
                (0..n)
                    .map(|c| if self.contains(Grid::new(c, r)) { '#' } else { '.' })
                    .collect()
            })
            .collect()
    }

    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Zone> {
        let n = rows.len();
        crate::grid::check_size(n)?;
        let mut z = Zone::empty(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref().trim();
            if row.chars().count() != n {
                return Err(RzsError::Parse(format!("zone row `{row}` is not {n} wide")));
            }
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '#' => z.insert(Grid::new(c, n - 1 - i)),
                    '.' => {}
                    other => {
                        return Err(RzsError::Parse(format!("bad zone character `{other}`")))
                    }
                }
            }
        }
        Ok(z)
    }

    /// Compact single-line form: rows joined by `/`.
    pub fn to_line(&self) -> String {
        self.to_rows().join("/")
    }

    pub fn from_line(s: &str) -> Result<Zone> {
        let rows: Vec<&str> = s.trim().split('/').collect();
        Zone::from_rows(&rows)
    }
}

impl fmt::Debug for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.grids().map(|g| g.to_string()).collect();
        write!(f, "Zone{{{}}}", names.join(","))
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_rows().join("\n"))
    }
}

/// The board restricted to a zone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZonePattern {
    pub zone: Zone,
    pub black: Bits,
    pub white: Bits,
}

impl ZonePattern {
    pub fn new(zone: Zone, black: Bits, white: Bits) -> ZonePattern {
        ZonePattern {
            zone,
            black: black & zone.bits,
            white: white & zone.bits,
        }
    }
}
