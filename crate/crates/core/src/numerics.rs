//! Integer and symbolic substrate: Fibonacci numbers, golden-ratio
//! approximants, the L/S substitution and the strip construction that
//! describes a ring of dipoles as a cut through the square lattice.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// The golden ratio τ = (1 + √5)/2, correctly rounded.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// The golden divergence 1/τ = τ − 1, correctly rounded.
pub const GOLDEN_DIVERGENCE: f64 = 0.618_033_988_749_894_8;

/// Largest accepted Fibonacci rank. `f_90` still fits comfortably in an `i64`.
pub const MAX_RANK: u32 = 90;

const FIB: [u64; (MAX_RANK + 1) as usize] = {
    let mut table = [0u64; (MAX_RANK + 1) as usize];
    table[1] = 1;
    let mut u = 2;
    while u <= MAX_RANK as usize {
        table[u] = table[u - 1] + table[u - 2];
        u += 1;
    }
    table
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumericsError {
    /// The rank lies outside the supported window.
    RankOutOfRange { rank: u32, min: u32, max: u32 },
    /// Substitution needs at least one symbol.
    EmptyWord,
    /// A word literal contained something other than `L` or `S`.
    InvalidSymbol(char),
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::RankOutOfRange { rank, min, max } => {
                write!(f, "rank {rank} outside supported range {min}..={max}")
            }
            NumericsError::EmptyWord => f.write_str("cannot inflate an empty word"),
            NumericsError::InvalidSymbol(c) => write!(f, "invalid symbol {c:?}, expected L or S"),
        }
    }
}

fn check_rank(rank: u32, min: u32, max: u32) -> Result<(), NumericsError> {
    if rank < min || rank > max {
        Err(NumericsError::RankOutOfRange { rank, min, max })
    } else {
        Ok(())
    }
}

/// Returns `f_u` with `f_0 = 0`, `f_1 = 1`.
pub fn fibonacci(rank: u32) -> Result<u64, NumericsError> {
    check_rank(rank, 0, MAX_RANK)?;
    Ok(FIB[rank as usize])
}

/// Rank `u ≥ 2` with `f_u == value`, if `value` is a Fibonacci number.
///
/// `1` maps to rank 2 since `f_1 = f_2`.
pub fn fibonacci_rank(value: u64) -> Option<u32> {
    (2..=MAX_RANK).find(|&u| FIB[u as usize] == value)
}

/// Rank of the Fibonacci number nearest to `value` when it lies within
/// `slack` of it.
pub fn nearest_fibonacci_rank(value: u64, slack: u64) -> Option<u32> {
    if value == 0 {
        return None;
    }
    (2..=MAX_RANK)
        .filter(|&u| FIB[u as usize].abs_diff(value) <= slack)
        .min_by_key(|&u| FIB[u as usize].abs_diff(value))
}

/// An exact positive rational number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub numer: u64,
    pub denom: u64,
}

impl Ratio {
    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// The convergent `f_u / f_{u-1}` of τ.
pub fn golden_approximant(rank: u32) -> Result<Ratio, NumericsError> {
    check_rank(rank, 2, MAX_RANK)?;
    Ok(Ratio {
        numer: FIB[rank as usize],
        denom: FIB[rank as usize - 1],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Long,
    Short,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Long => 'L',
            Symbol::Short => 'S',
        }
    }
}

/// A word over `{L, S}`. Ring words are cyclic; two cyclic words are
/// [`equivalent`](LsWord::equivalent) when they agree up to rotation and
/// reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LsWord {
    symbols: Vec<Symbol>,
    cyclic: bool,
}

impl LsWord {
    pub fn new(symbols: Vec<Symbol>, cyclic: bool) -> Self {
        LsWord { symbols, cyclic }
    }

    /// `inflate` applied `k` times to the single-symbol word `S`.
    pub fn inflation_word(k: u32, cyclic: bool) -> Self {
        let mut word = LsWord::new(alloc::vec![Symbol::Short], cyclic);
        for _ in 0..k {
            word = word.inflate().expect("inflation never empties a word");
        }
        word
    }

    /// Groups a cyclic sequence of dipole gaps into pairs and singletons.
    ///
    /// `gaps[i]` separates dipole `i` from dipole `i + 1` (cyclically). A gap
    /// shorter than the mean binds its two dipoles into a pair (`L`); every
    /// unbound dipole is a singleton (`S`).
    pub fn from_cyclic_gaps(gaps: &[f64]) -> Self {
        let count = gaps.len();
        if count == 0 {
            return LsWord::new(Vec::new(), true);
        }
        let mean = gaps.iter().sum::<f64>() / count as f64;
        let short: Vec<bool> = gaps.iter().map(|&g| g < mean).collect();
        if short.iter().all(|&b| !b) || short.iter().all(|&b| b) {
            return LsWord::new(alloc::vec![Symbol::Short; count], true);
        }
        // Start right after a long gap so that no pair straddles the origin.
        let start = (0..count)
            .find(|&i| !short[(i + count - 1) % count])
            .unwrap_or(0);
        let mut symbols = Vec::with_capacity(count);
        let mut i = 0;
        while i < count {
            let here = (start + i) % count;
            if short[here] && i + 1 < count {
                symbols.push(Symbol::Long);
                i += 2;
            } else {
                symbols.push(Symbol::Short);
                i += 1;
            }
        }
        LsWord::new(symbols, true)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// `(#L, #S)`.
    pub fn counts(&self) -> (usize, usize) {
        let long = self.symbols.iter().filter(|&&s| s == Symbol::Long).count();
        (long, self.symbols.len() - long)
    }

    /// Number of dipoles the word stands for when `L` is a pair and `S` a
    /// singleton.
    pub fn dipole_count(&self) -> usize {
        let (long, short) = self.counts();
        2 * long + short
    }

    /// Applies `L → LS`, `S → L`.
    pub fn inflate(&self) -> Result<LsWord, NumericsError> {
        if self.symbols.is_empty() {
            return Err(NumericsError::EmptyWord);
        }
        let (long, short) = self.counts();
        let mut symbols = Vec::with_capacity(2 * long + short);
        for &s in &self.symbols {
            match s {
                Symbol::Long => {
                    symbols.push(Symbol::Long);
                    symbols.push(Symbol::Short);
                }
                Symbol::Short => symbols.push(Symbol::Long),
            }
        }
        Ok(LsWord::new(symbols, self.cyclic))
    }

    /// True when two `S` are adjacent (wrapping around for cyclic words).
    pub fn has_adjacent_short(&self) -> bool {
        let n = self.symbols.len();
        if n < 2 {
            return false;
        }
        let limit = if self.cyclic { n } else { n - 1 };
        (0..limit).any(|i| {
            self.symbols[i] == Symbol::Short && self.symbols[(i + 1) % n] == Symbol::Short
        })
    }

    /// Equality modulo reversal, and also modulo rotation for cyclic words.
    pub fn equivalent(&self, other: &LsWord) -> bool {
        if self.symbols.len() != other.symbols.len() {
            return false;
        }
        let reversed: Vec<Symbol> = other.symbols.iter().rev().copied().collect();
        if self.cyclic || other.cyclic {
            let mut doubled = self.symbols.clone();
            doubled.extend_from_slice(&self.symbols);
            occurs_in(&other.symbols, &doubled) || occurs_in(&reversed, &doubled)
        } else {
            self.symbols == other.symbols || self.symbols == reversed
        }
    }
}

impl fmt::Display for LsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for LsWord {
    type Err = NumericsError;

    /// Parses a linear word such as `"LSL"`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let symbols = text
            .chars()
            .map(|c| match c {
                'L' => Ok(Symbol::Long),
                'S' => Ok(Symbol::Short),
                other => Err(NumericsError::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LsWord::new(symbols, false))
    }
}

impl From<&LsWord> for String {
    fn from(word: &LsWord) -> String {
        word.symbols.iter().map(|s| s.as_char()).collect()
    }
}

/// Knuth–Morris–Pratt substring test.
fn occurs_in(needle: &[Symbol], haystack: &[Symbol]) -> bool {
    if needle.is_empty() {
        return true;
    }
    let mut failure = alloc::vec![0usize; needle.len()];
    let mut k = 0;
    for i in 1..needle.len() {
        while k > 0 && needle[i] != needle[k] {
            k = failure[k - 1];
        }
        if needle[i] == needle[k] {
            k += 1;
        }
        failure[i] = k;
    }
    let mut k = 0;
    for &h in haystack {
        while k > 0 && h != needle[k] {
            k = failure[k - 1];
        }
        if h == needle[k] {
            k += 1;
            if k == needle.len() {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StripCellKind {
    Heptagon,
    Hexagon,
    Pentagon,
}

/// A lattice point of the strip together with the cell type of its sub-strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StripCell {
    pub i: i64,
    pub j: i64,
    /// Position inside the ring, `0 ≤ index < f_{u+2}`; equals the offset of
    /// the spiral index from the first heptagon of the ring.
    pub index: u64,
    pub kind: StripCellKind,
}

/// Lattice points of one period of the strip that models a ring with `f_u`
/// dipoles.
///
/// The square lattice carries the index functional `k(i, j) = f_u·j −
/// f_{u+1}·i`; neighbouring square cells of a ring differ by `f_u` and
/// `f_{u+1}` in spiral index. The strip is `0 ≤ k < f_{u+2}`, its direction is
/// the period vector `(f_u, f_{u+1})` and its length `√(f_u² + f_{u+1}²)`.
/// The three sub-strips hold `f_u` heptagons, `f_{u-1}` hexagons and `f_u`
/// pentagons, in that order of `k`. Cells are returned in `k` order.
pub fn strip_sequence(rank: u32) -> Result<Vec<StripCell>, NumericsError> {
    check_rank(rank, 3, 40)?;
    let fu = FIB[rank as usize] as i128;
    let fprev = FIB[rank as usize - 1] as i128;
    let fnext = FIB[rank as usize + 1] as i128;
    let total = FIB[rank as usize + 2];
    // f_u·f_u − f_{u+1}·f_{u-1} = (−1)^{u+1}, so (i, j) = ±(f_{u-1}, f_u) has k = 1.
    let sign: i128 = if rank % 2 == 1 { 1 } else { -1 };
    let period_sq = fu * fu + fnext * fnext;
    let mut cells = Vec::with_capacity(total as usize);
    for k in 0..total {
        let kk = k as i128 * sign;
        let (mut i, mut j) = (kk * fprev, kk * fu);
        // Shift by whole periods so that the projection on the strip
        // direction lands in [0, period).
        let along = i * fu + j * fnext;
        let shift = along.div_euclid(period_sq);
        i -= shift * fu;
        j -= shift * fnext;
        debug_assert_eq!(fu * j - fnext * i, k as i128);
        let kind = if (k as i128) < fu {
            StripCellKind::Heptagon
        } else if (k as i128) < fu + fprev {
            StripCellKind::Hexagon
        } else {
            StripCellKind::Pentagon
        };
        cells.push(StripCell {
            i: i as i64,
            j: j as i64,
            index: k,
            kind,
        });
    }
    Ok(cells)
}

/// Pair/singleton word of the dipoles of [`strip_sequence`], read along the
/// strip direction.
///
/// Heptagon `k` and pentagon `k + f_{u+1}` are one lattice edge apart and form
/// a dipole.
pub fn strip_dipole_word(rank: u32) -> Result<LsWord, NumericsError> {
    let cells = strip_sequence(rank)?;
    let fu = FIB[rank as usize] as f64;
    let fnext = FIB[rank as usize + 1] as f64;
    let period = fu * fu + fnext * fnext;
    let mut positions: Vec<f64> = cells
        .iter()
        .filter(|c| c.kind == StripCellKind::Heptagon)
        .map(|c| (c.i as f64 * fu + c.j as f64 * fnext) / period)
        .collect();
    positions.sort_by(f64::total_cmp);
    Ok(LsWord::from_cyclic_gaps(&cyclic_gaps(&positions, 1.0)))
}

/// Gaps between consecutive sorted positions on a circle of length `period`.
pub fn cyclic_gaps(sorted: &[f64], period: f64) -> Vec<f64> {
    let n = sorted.len();
    (0..n)
        .map(|i| {
            if i + 1 < n {
                sorted[i + 1] - sorted[i]
            } else {
                sorted[0] + period - sorted[n - 1]
            }
        })
        .collect()
}
