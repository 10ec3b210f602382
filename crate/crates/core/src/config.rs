//! Intervals of cells and finite configurations.

use std::collections::BTreeMap;
use std::fmt;

use crate::automaton::{Alphabet, Neighborhood, StateId};
use crate::error::{CoreError, Result};

/// `[lo, hi]` over the integers; every empty interval compares equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    pub const EMPTY: Interval = Interval { lo: 0, hi: -1 };

    pub fn new(lo: i64, hi: i64) -> Self {
        if lo > hi {
            Self::EMPTY
        } else {
            Interval { lo, hi }
        }
    }

    pub fn empty() -> Self {
        Self::EMPTY
    }

    /// `[-radius, radius]`.
    pub fn centered(radius: i64) -> Self {
        Self::new(-radius, radius)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Bounds of a non-empty interval.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        (!self.is_empty()).then_some((self.lo, self.hi))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    /// `other ⊆ self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        match (self.bounds(), other.bounds()) {
            (None, _) => *other,
            (_, None) => *self,
            (Some((a, b)), Some((c, d))) => Interval::new(a.min(c), b.max(d)),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = (self.lo, self.hi);
        lo..=hi
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bounds() {
            None => write!(f, "∅"),
            Some((lo, hi)) => write!(f, "[{lo},{hi}]"),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `ext(I) = [lo − a_r, hi − a_1]`, the cells one step of evolution can touch.
pub fn ext(i: Interval, nb: &Neighborhood) -> Interval {
    match i.bounds() {
        None => Interval::EMPTY,
        Some((lo, hi)) => Interval::new(lo - nb.last(), hi - nb.first()),
    }
}

/// Finite configuration: only non-quiescent cells are stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    quiescent: StateId,
    cells: BTreeMap<i64, StateId>,
}

impl Configuration {
    pub fn empty(quiescent: StateId) -> Self {
        Configuration {
            quiescent,
            cells: BTreeMap::new(),
        }
    }

    /// Quiescent entries in `cells` are dropped.
    pub fn from_cells(quiescent: StateId, cells: impl IntoIterator<Item = (i64, StateId)>) -> Self {
        let mut c = Self::empty(quiescent);
        for (i, s) in cells {
            c.set(i, s);
        }
        c
    }

    /// Places `word` on consecutive cells starting at `start`.
    pub fn from_word(quiescent: StateId, start: i64, word: &[StateId]) -> Self {
        Self::from_cells(
            quiescent,
            word.iter().enumerate().map(|(k, &s)| (start + k as i64, s)),
        )
    }

    pub fn set(&mut self, i: i64, s: StateId) {
        if s == self.quiescent {
            self.cells.remove(&i);
        } else {
            self.cells.insert(i, s);
        }
    }

    pub fn quiescent(&self) -> StateId {
        self.quiescent
    }

    pub fn state(&self, i: i64) -> StateId {
        self.cells.get(&i).copied().unwrap_or(self.quiescent)
    }

    pub fn is_quiescent(&self) -> bool {
        self.cells.is_empty()
    }

    /// Non-quiescent cells in increasing index order.
    pub fn support(&self) -> impl Iterator<Item = (i64, StateId)> + '_ {
        self.cells.iter().map(|(&i, &s)| (i, s))
    }

    pub fn support_len(&self) -> usize {
        self.cells.len()
    }

    pub fn idom(&self) -> Interval {
        match (self.cells.keys().next(), self.cells.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Interval::new(lo, hi),
            _ => Interval::EMPTY,
        }
    }

    pub fn shifted(&self, delta: i64) -> Self {
        Configuration {
            quiescent: self.quiescent,
            cells: self.cells.iter().map(|(&i, &s)| (i + delta, s)).collect(),
        }
    }

    /// Translate so the first non-quiescent cell sits at index 0.
    pub fn normalized(&self) -> Self {
        match self.idom().bounds() {
            Some((lo, _)) => self.shifted(-lo),
            None => self.clone(),
        }
    }

    /// States of the cells in `i`, quiescent-filled.
    pub fn word_on(&self, i: Interval) -> Vec<StateId> {
        i.iter().map(|k| self.state(k)).collect()
    }

    /// Config-spec rendering, e.g. `q,p,p@-1`; empty string for the
    /// quiescent configuration.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self.idom().bounds() {
            None => String::new(),
            Some((lo, _)) => {
                let names: Vec<&str> = self
                    .word_on(self.idom())
                    .into_iter()
                    .map(|s| alphabet.name(s))
                    .collect();
                format!("{}@{}", names.join(","), lo)
            }
        }
    }

    /// Parses config-spec syntax: comma-separated state names, optionally
    /// followed by `@offset` (default 0) giving the first listed cell.
    pub fn parse(spec: &str, alphabet: &Alphabet) -> Result<Self> {
        let spec = spec.trim();
        let q = alphabet.quiescent();
        if spec.is_empty() {
            return Ok(Self::empty(q));
        }
        let (names, start) = match spec.rsplit_once('@') {
            Some((names, offset)) => {
                let start = offset
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| CoreError::MalformedConfiguration(spec.to_string()))?;
                (names, start)
            }
            None => (spec, 0),
        };
        let word = names
            .split(',')
            .map(|n| {
                let n = n.trim();
                if n.is_empty() {
                    return Err(CoreError::MalformedConfiguration(spec.to_string()));
                }
                alphabet
                    .state(n)
                    .ok_or_else(|| CoreError::UnknownState(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_word(q, start, &word))
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.cells.iter().map(|(i, s)| (i, s.0)))
            .finish()
    }
}

/// Minimal interval containing the support of `c`.
pub fn idom(c: &Configuration) -> Interval {
    c.idom()
}

/// `(c_{i+a_1}, …, c_{i+a_r})`.
pub fn neighborhood_word(c: &Configuration, i: i64, nb: &Neighborhood) -> Vec<StateId> {
    nb.offsets().iter().map(|&a| c.state(i + a)).collect()
}

/// Every configuration with support inside `window`, in a fixed order: the
/// `n`-th one writes the base-`|Σ|` digits of `n` onto the window, least
/// significant digit on the leftmost cell.
pub fn enumerate_window(
    window: Interval,
    alphabet: &Alphabet,
) -> impl Iterator<Item = Configuration> + '_ {
    let k = alphabet.len();
    let total = k.checked_pow(window.len() as u32).unwrap_or(usize::MAX);
    (0..total).map(move |n| window_config(n, window, alphabet))
}

pub(crate) fn window_config(mut n: usize, window: Interval, alphabet: &Alphabet) -> Configuration {
    let mut c = Configuration::empty(alphabet.quiescent());
    let k = alphabet.len();
    for cell in window.iter() {
        // digit value d maps to the d-th state counted from the quiescent one,
        // so n = 0 is always the quiescent configuration
        let d = n % k;
        n /= k;
        c.set(cell, StateId((alphabet.quiescent().0 + d) % k));
    }
    c
}
