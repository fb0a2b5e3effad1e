//! Bit-packed truth tables over the Boolean hypercube.
//!
//! A table of arity `n` stores `f(x)` for every `x` in `0..2^n`. Inputs use a
//! little-endian encoding: bit `j` of the point index is coordinate `j`
//! (coordinates are 0-based throughout the crate). The text form is
//! `<n>:<hex>` with `ceil(2^n / 4)` uppercase hex digits, most significant
//! digit first, so the last digit holds `f(0)..f(3)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of `{0,1}^n`, encoded little-endian.
pub type Point = usize;

/// Largest arity a table may have.
pub const MAX_ARITY: usize = 24;

/// `x ⪯ y` in the coordinate-wise order.
#[inline]
pub fn precedes(x: Point, y: Point) -> bool {
    x | y == y
}

/// The all-ones point `1^n`.
#[inline]
pub fn full(n: usize) -> Point {
    (1usize << n) - 1
}

/// Coordinates set in `mask`, ascending.
pub fn coords_of(mask: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Bitmask of a coordinate list.
pub fn mask_of(coords: &[usize]) -> usize {
    coords.iter().fold(0, |m, &i| m | (1 << i))
}

/// Renders a point as `x_{n-1} … x_0` (the same order as its binary index).
pub fn point_string(x: Point, n: usize) -> String {
    (0..n)
        .rev()
        .map(|j| if x >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A total Boolean function `{0,1}^n -> {0,1}` stored as a packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl TruthTable {
    /// Constant function of arity `n`.
    pub fn constant(n: usize, value: bool) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::ArityAboveCap {
                what: "truth table",
                arity: n,
                cap: MAX_ARITY,
            });
        }
        let fill = if value { u64::MAX } else { 0 };
        let mut words = vec![fill; word_count(n)];
        words[0] &= tail_mask(n);
        Ok(TruthTable { arity: n, words })
    }

    /// Builds a table by evaluating `f` on every point.
    pub fn from_fn(n: usize, mut f: impl FnMut(Point) -> bool) -> Result<Self> {
        let mut t = Self::constant(n, false)?;
        for x in 0..1usize << n {
            if f(x) {
                t.words[x >> 6] |= 1 << (x & 63);
            }
        }
        Ok(t)
    }

    /// Table of arity `n <= 6` from the low `2^n` bits of `bits`.
    pub fn from_u64(n: usize, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::ArityAboveCap {
                what: "u64 table",
                arity: n,
                cap: 6,
            });
        }
        Ok(TruthTable {
            arity: n,
            words: vec![bits & tail_mask(n)],
        })
    }

    /// The packed bits of a table with arity at most 6.
    pub fn as_u64(&self) -> Option<u64> {
        (self.arity <= 6).then(|| self.words[0])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of points, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    /// Always false: a table has at least one point.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `f(x)`. Panics when `x >= 2^n`; see [`TruthTable::evaluate`].
    #[inline]
    pub fn get(&self, x: Point) -> bool {
        debug_assert!(x < self.len());
        self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    /// Checked evaluation.
    pub fn evaluate(&self, x: Point) -> Result<bool> {
        if x >= self.len() {
            return Err(Error::OutOfRange {
                what: "input point",
                index: x,
                limit: self.len(),
            });
        }
        Ok(self.get(x))
    }

    #[inline]
    fn set(&mut self, x: Point, value: bool) {
        let bit = 1u64 << (x & 63);
        if value {
            self.words[x >> 6] |= bit;
        } else {
            self.words[x >> 6] &= !bit;
        }
    }

    /// `|f^{-1}(1)|`.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `Some(b)` when the function is constantly `b`.
    pub fn constant_value(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            c if c == self.len() => Some(true),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Points in `f^{-1}(1)`, ascending.
    pub fn ones(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).filter(move |&x| self.get(x))
    }

    /// Complements every output bit.
    pub fn negate_output(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= tail_mask(self.arity);
        TruthTable {
            arity: self.arity,
            words,
        }
    }

    /// `g(x) = f(!x)`: reverses the point order.
    pub fn flip_all_inputs(&self) -> Self {
        let top = full(self.arity);
        let mut out = TruthTable {
            arity: self.arity,
            words: vec![0; self.words.len()],
        };
        for x in self.ones() {
            out.set(top ^ x, true);
        }
        out
    }

    /// True when `f(x) <= f(x | e_i)` along every hypercube edge.
    pub fn is_monotone(&self) -> bool {
        let n = self.arity;
        (0..n).all(|i| {
            let bit = 1 << i;
            (0..self.len())
                .filter(|x| x & bit == 0)
                .all(|x| !self.get(x) || self.get(x | bit))
        })
    }

    /// Subfunction on the free coordinates of `r`, re-indexed in ascending
    /// order.
    pub fn restrict(&self, r: &Restriction) -> Result<Self> {
        if r.arity() != self.arity {
            return Err(Error::Precondition(format!(
                "restriction over {} coordinates applied to arity {}",
                r.arity(),
                self.arity
            )));
        }
        let free = r.free_mask();
        let base = r.fixed_values();
        let m = free.count_ones() as usize;
        let mut out = TruthTable::constant(m, false)?;
        // submasks of `free` in increasing order match the re-indexed points
        let mut s = 0usize;
        for y in 0..1usize << m {
            if self.get(base | s) {
                out.set(y, true);
            }
            s = (s | !free).wrapping_add(1) & free;
        }
        Ok(out)
    }

    /// Fixes a single coordinate.
    pub fn fix(&self, coord: usize, value: bool) -> Result<Self> {
        let r = Restriction::free(self.arity).with(coord, value)?;
        self.restrict(&r)
    }

    /// Subfunction on `{x : x ⪰ d}`.
    pub fn above(&self, d: Point) -> Result<Self> {
        self.restrict(&Restriction::above(self.arity, d)?)
    }

    /// Subfunction on `{x : x ⪯ u}`.
    pub fn under(&self, u: Point) -> Result<Self> {
        self.restrict(&Restriction::under(self.arity, u)?)
    }

    fn hex_digits(&self) -> usize {
        self.len().div_ceil(4)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.arity)?;
        for d in (0..self.hex_digits()).rev() {
            let mut nib = 0u32;
            for b in 0..4 {
                let x = 4 * d + b;
                if x < self.len() && self.get(x) {
                    nib |= 1 << b;
                }
            }
            write!(
                f,
                "{}",
                char::from_digit(nib, 16).unwrap().to_ascii_uppercase()
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({self})")
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (n_str, hex) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(text, "expected <n>:<hex>"))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| Error::parse(text, "arity is not a non-negative integer"))?;
        if n > MAX_ARITY {
            return Err(Error::ArityAboveCap {
                what: "truth table",
                arity: n,
                cap: MAX_ARITY,
            });
        }
        let expected = (1usize << n).div_ceil(4);
        if hex.len() != expected {
            return Err(Error::parse(
                text,
                format!("expected {expected} hex digits, found {}", hex.len()),
            ));
        }
        let mut t = TruthTable::constant(n, false)?;
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nib = ch
                .to_digit(16)
                .ok_or_else(|| Error::parse(text, format!("invalid hex digit {ch:?}")))?;
            for b in 0..4 {
                if nib >> b & 1 == 1 {
                    let x = 4 * pos + b;
                    if x >= t.len() {
                        return Err(Error::parse(text, "bits set beyond 2^n"));
                    }
                    t.set(x, true);
                }
            }
        }
        Ok(t)
    }
}

impl Serialize for TruthTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A partial assignment: each coordinate is fixed to a bit or left free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Restriction {
    assignments: Vec<Option<bool>>,
}

impl Restriction {
    /// The empty restriction on `n` coordinates.
    pub fn free(n: usize) -> Self {
        Restriction {
            assignments: vec![None; n],
        }
    }

    pub fn from_assignments(assignments: Vec<Option<bool>>) -> Self {
        Restriction { assignments }
    }

    /// Fixes `x_i = value` where the bit of `mask` is set.
    pub fn from_masks(n: usize, mask: usize, values: usize) -> Self {
        Restriction {
            assignments: (0..n)
                .map(|i| (mask >> i & 1 == 1).then_some(values >> i & 1 == 1))
                .collect(),
        }
    }

    /// `x_i = 1` wherever `d_i = 1`.
    pub fn above(n: usize, d: Point) -> Result<Self> {
        check_point(n, d)?;
        Ok(Self::from_masks(n, d, d))
    }

    /// `x_i = 0` wherever `u_i = 0`.
    pub fn under(n: usize, u: Point) -> Result<Self> {
        check_point(n, u)?;
        Ok(Self::from_masks(n, full(n) & !u, 0))
    }

    pub fn with(mut self, coord: usize, value: bool) -> Result<Self> {
        let n = self.assignments.len();
        let slot = self.assignments.get_mut(coord).ok_or(Error::OutOfRange {
            what: "coordinate",
            index: coord,
            limit: n,
        })?;
        *slot = Some(value);
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.assignments.len()
    }

    pub fn get(&self, coord: usize) -> Option<bool> {
        self.assignments.get(coord).copied().flatten()
    }

    pub fn assignments(&self) -> &[Option<bool>] {
        &self.assignments
    }

    pub fn fixed_count(&self) -> usize {
        self.assignments.iter().filter(|a| a.is_some()).count()
    }

    pub fn fixed_mask(&self) -> usize {
        self.assignments
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_some())
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn free_mask(&self) -> usize {
        full(self.arity()) & !self.fixed_mask()
    }

    pub fn fixed_values(&self) -> usize {
        self.assignments
            .iter()
            .enumerate()
            .filter(|(_, a)| **a == Some(true))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Free coordinates, ascending; position `k` is coordinate `k` of the
    /// restricted table.
    pub fn free_coords(&self) -> Vec<usize> {
        coords_of(self.free_mask())
    }

    /// Merges `inner`, a restriction of the already-restricted table, into
    /// `self`: `t.restrict(self).restrict(inner) == t.restrict(self.compose(inner))`.
    pub fn compose(&self, inner: &Restriction) -> Result<Self> {
        let free = self.free_coords();
        if inner.arity() != free.len() {
            return Err(Error::Precondition(format!(
                "inner restriction over {} coordinates, expected {}",
                inner.arity(),
                free.len()
            )));
        }
        let mut out = self.clone();
        for (k, &coord) in free.iter().enumerate() {
            if let Some(v) = inner.get(k) {
                out.assignments[coord] = Some(v);
            }
        }
        Ok(out)
    }
}

fn check_point(n: usize, x: Point) -> Result<()> {
    if x >> n != 0 {
        return Err(Error::OutOfRange {
            what: "point",
            index: x,
            limit: 1 << n,
        });
    }
    Ok(())
}
