use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{check_cap, Result};
use crate::table::{coords_of, Point, TruthTable};

/// A value attained at a specific input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnessed {
    pub value: usize,
    pub witness: Point,
}

/// `s(f, x)`.
pub fn sensitivity_at(t: &TruthTable, x: Point) -> usize {
    let fx = t.get(x);
    (0..t.arity()).filter(|&i| t.get(x ^ 1 << i) != fx).count()
}

/// `s(f)` with the smallest input attaining it.
pub fn sensitivity(t: &TruthTable) -> Witnessed {
    let mut best = Witnessed {
        value: 0,
        witness: 0,
    };
    for x in 0..t.len() {
        let v = sensitivity_at(t, x);
        if v > best.value {
            best = Witnessed {
                value: v,
                witness: x,
            };
        }
    }
    best
}

/// Block sensitivity at one input together with a maximum packing of
/// disjoint minimal sensitive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSensitivity {
    pub value: usize,
    pub witness: Point,
    /// Pairwise disjoint minimal sensitive blocks, each a sorted coordinate
    /// list; the list is the lexicographically smallest optimal packing.
    pub blocks: Vec<Vec<usize>>,
}

/// All minimal sensitive blocks of `x`, as coordinate masks.
pub fn minimal_sensitive_blocks(t: &TruthTable, x: Point) -> Vec<usize> {
    let size = t.len();
    let fx = t.get(x);
    let sens: Vec<bool> = (0..size).map(|b| t.get(x ^ b) != fx).collect();
    // has[b]: some nonempty subset of b is sensitive
    let mut has = sens.clone();
    for i in 0..t.arity() {
        let bit = 1 << i;
        for b in 0..size {
            if b & bit != 0 && has[b ^ bit] {
                has[b] = true;
            }
        }
    }
    (1..size)
        .filter(|&b| sens[b] && coords_of(b).iter().all(|&i| !has[b ^ 1 << i]))
        .collect()
}

/// Maximum disjoint packing over a fixed block family.
struct Packer {
    /// blocks grouped by their lowest coordinate
    by_low: Vec<Vec<usize>>,
    memo: HashMap<usize, usize>,
}

impl Packer {
    fn new(n: usize, blocks: &[usize]) -> Self {
        let mut by_low = vec![Vec::new(); n];
        for &b in blocks {
            by_low[b.trailing_zeros() as usize].push(b);
        }
        Packer {
            by_low,
            memo: HashMap::new(),
        }
    }

    /// Largest number of disjoint blocks inside `avail`.
    fn best(&mut self, avail: usize) -> usize {
        if avail == 0 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&avail) {
            return v;
        }
        let low = avail.trailing_zeros() as usize;
        let rest = avail & (avail - 1);
        let mut v = self.best(rest);
        for k in 0..self.by_low[low].len() {
            let b = self.by_low[low][k];
            if b & avail == b && v < 1 + (avail & !b).count_ones() as usize {
                v = v.max(1 + self.best(avail & !b));
            }
        }
        self.memo.insert(avail, v);
        v
    }
}

fn lex_sorted(blocks: &[usize]) -> Vec<usize> {
    let mut sorted = blocks.to_vec();
    sorted.sort_by_key(|&b| coords_of(b));
    sorted
}

fn check_bs_cap(t: &TruthTable) -> Result<()> {
    check_cap("block sensitivity", t.arity(), caps::BLOCK_SENSITIVITY)
}

fn bs_value(t: &TruthTable, x: Point) -> usize {
    let blocks = minimal_sensitive_blocks(t, x);
    Packer::new(t.arity(), &blocks).best(t.len() - 1)
}

/// `bs(f, x)` with the lexicographically smallest optimal packing.
pub fn block_sensitivity_at(t: &TruthTable, x: Point) -> Result<BlockSensitivity> {
    check_bs_cap(t)?;
    let blocks = lex_sorted(&minimal_sensitive_blocks(t, x));
    let mut packer = Packer::new(t.arity(), &blocks);
    let all = t.len() - 1;
    let value = packer.best(all);
    let mut chosen = Vec::with_capacity(value);
    let mut avail = all;
    while chosen.len() < value {
        let need = value - chosen.len() - 1;
        let next = blocks
            .iter()
            .copied()
            .find(|&b| b & avail == b && packer.best(avail & !b) >= need)
            .expect("an optimal packing extends");
        avail &= !next;
        chosen.push(next);
    }
    Ok(BlockSensitivity {
        value,
        witness: x,
        blocks: chosen.into_iter().map(coords_of).collect(),
    })
}

/// `bs(f)`; the witness is the smallest input attaining the maximum.
pub fn block_sensitivity(t: &TruthTable) -> Result<BlockSensitivity> {
    check_bs_cap(t)?;
    let mut best = (0, 0);
    for x in 0..t.len() {
        let v = bs_value(t, x);
        if v > best.0 {
            best = (v, x);
        }
    }
    block_sensitivity_at(t, best.1)
}

/// `bs(f)` without the witness packing.
pub fn block_sensitivity_value(t: &TruthTable) -> Result<usize> {
    check_bs_cap(t)?;
    Ok((0..t.len()).map(|x| bs_value(t, x)).max().unwrap_or(0))
}
