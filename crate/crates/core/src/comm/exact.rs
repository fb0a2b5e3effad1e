use std::collections::BTreeSet;

use super::matrix::CommMatrix;
use crate::caps;
use crate::error::{check_cap, Result};

/// Up to 256 matrix entries as a bitset.
type Bits = [u64; 4];

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn and(a: &Bits, b: &Bits) -> Bits {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]]
}

fn and_not(a: &Bits, b: &Bits) -> Bits {
    [a[0] & !b[0], a[1] & !b[1], a[2] & !b[2], a[3] & !b[3]]
}

fn or_assign(a: &mut Bits, b: &Bits) {
    for k in 0..4 {
        a[k] |= b[k];
    }
}

fn count(b: &Bits) -> u32 {
    b.iter().map(|w| w.count_ones()).sum()
}

fn is_zero(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn members(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    (0..4).flat_map(move |k| {
        let mut w = b[k];
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let i = w.trailing_zeros() as usize;
                w &= w - 1;
                k * 64 + i
            })
        })
    })
}

/// Maximal all-ones rectangles of a 0/1 matrix given as row bitmasks.
/// Column sets of maximal rectangles are exactly the nonempty intersections
/// of row sets, so closing the rows under intersection enumerates them.
pub fn maximal_rectangles(rows: &[u64]) -> Vec<(u64, u64)> {
    let mut closed: BTreeSet<u64> = BTreeSet::new();
    for &r in rows.iter().filter(|&&r| r != 0) {
        let new: Vec<u64> = closed
            .iter()
            .map(|&c| c & r)
            .filter(|&c| c != 0)
            .chain(std::iter::once(r))
            .collect();
        closed.extend(new);
    }
    closed
        .into_iter()
        .map(|cols| {
            let row_set = rows
                .iter()
                .enumerate()
                .filter(|(_, &r)| r & cols == cols)
                .fold(0u64, |m, (i, _)| m | 1 << i);
            (row_set, cols)
        })
        .collect()
}

struct Search {
    rects: Vec<Bits>,
    /// Rectangles containing each entry.
    by_entry: Vec<Vec<usize>>,
    /// Union of all rectangles containing each entry.
    reach: Vec<Bits>,
    best: usize,
}

impl Search {
    /// Entries pairwise sharing no rectangle each need their own.
    fn lower_bound(&self, uncovered: &Bits) -> usize {
        let mut blocked = [0u64; 4];
        let mut lb = 0;
        for e in members(uncovered) {
            if !has(&blocked, e) {
                lb += 1;
                or_assign(&mut blocked, &self.reach[e]);
            }
        }
        lb
    }

    fn run(&mut self, uncovered: Bits, used: usize) {
        if is_zero(&uncovered) {
            self.best = self.best.min(used);
            return;
        }
        if used + self.lower_bound(&uncovered) >= self.best {
            return;
        }
        let e = members(&uncovered)
            .min_by_key(|&e| self.by_entry[e].len())
            .expect("nonempty");
        let mut options: Vec<(u32, usize)> = self.by_entry[e]
            .iter()
            .map(|&r| (count(&and(&self.rects[r], &uncovered)), r))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, r) in options {
            let next = and_not(&uncovered, &self.rects[r]);
            self.run(next, used + 1);
        }
    }
}

/// Minimum number of monochromatic rectangles covering the entries of
/// `m` equal to `b`. Branch and bound over maximal rectangles, seeded with
/// the greedy cover.
pub fn exact_cover_number(m: &CommMatrix, b: bool) -> Result<usize> {
    check_cap("exact cover", m.outer.arity(), caps::EXACT_COVER)?;
    Ok(min_rectangle_cover(&m.rows_with_value(b)))
}

/// Minimum all-ones rectangle cover of a matrix with at most 16 rows and
/// 16 columns.
pub fn min_rectangle_cover(rows: &[u64]) -> usize {
    let dim = rows.len();
    assert!(dim <= 16, "exact cover supports at most 16 rows");
    let entry = |x: usize, y: usize| x * 16 + y;
    let mut targets = [0u64; 4];
    for (x, &r) in rows.iter().enumerate() {
        assert!(r >> 16 == 0, "exact cover supports at most 16 columns");
        for y in 0..16 {
            if r >> y & 1 == 1 {
                set(&mut targets, entry(x, y));
            }
        }
    }
    if is_zero(&targets) {
        return 0;
    }
    let rects: Vec<Bits> = maximal_rectangles(rows)
        .into_iter()
        .map(|(rs, cs)| {
            let mut bits = [0u64; 4];
            for x in (0..dim).filter(|x| rs >> x & 1 == 1) {
                for y in (0..16).filter(|y| cs >> y & 1 == 1) {
                    set(&mut bits, entry(x, y));
                }
            }
            bits
        })
        .collect();
    let mut by_entry = vec![Vec::new(); 256];
    let mut reach = vec![[0u64; 4]; 256];
    for (i, r) in rects.iter().enumerate() {
        for e in members(r) {
            by_entry[e].push(i);
            or_assign(&mut reach[e], r);
        }
    }

    let mut greedy = 0;
    let mut left = targets;
    while !is_zero(&left) {
        let r = rects
            .iter()
            .max_by_key(|r| count(&and(r, &left)))
            .expect("every entry lies in a maximal rectangle");
        left = and_not(&left, r);
        greedy += 1;
    }

    let mut search = Search {
        rects,
        by_entry,
        reach,
        best: greedy,
    };
    search.run(targets, 0);
    search.best
}
