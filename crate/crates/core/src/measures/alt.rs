use serde::{Deserialize, Serialize};

use crate::table::{full, Point, TruthTable};

/// `alt(f)` with a maximal chain `0^n = c_0 ≺ c_1 ≺ … ≺ c_n = 1^n` along
/// which the value changes exactly `value` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alternation {
    pub value: usize,
    pub chain: Vec<Point>,
}

/// `alt(f, x)` for every `x`, by dynamic programming over immediate
/// predecessors.
pub fn alt_profile(t: &TruthTable) -> Vec<usize> {
    let mut alt = vec![0usize; t.len()];
    for x in 1..t.len() {
        let fx = t.get(x);
        let mut m = x;
        let mut best = 0;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            let p = x ^ bit;
            best = best.max(alt[p] + (t.get(p) != fx) as usize);
            m ^= bit;
        }
        alt[x] = best;
    }
    alt
}

/// `alt(f, x)`.
pub fn alt_at(t: &TruthTable, x: Point) -> usize {
    alt_profile(t)[x]
}

/// Number of value changes along a sequence of points.
pub fn alternations_along(t: &TruthTable, chain: &[Point]) -> usize {
    chain
        .windows(2)
        .filter(|w| t.get(w[0]) != t.get(w[1]))
        .count()
}

/// `alt(f) = alt(f, 1^n)`. The chain is recovered top-down, dropping the
/// highest coordinate that keeps the count.
pub fn alt(t: &TruthTable) -> Alternation {
    let profile = alt_profile(t);
    let mut x = full(t.arity());
    let value = profile[x];
    let mut chain = vec![x];
    while x != 0 {
        let fx = t.get(x);
        let need = profile[x];
        let i = (0..t.arity())
            .rev()
            .find(|&i| {
                x >> i & 1 == 1 && {
                    let p = x ^ 1 << i;
                    profile[p] + (t.get(p) != fx) as usize == need
                }
            })
            .expect("some predecessor realises the value");
        x ^= 1 << i;
        chain.push(x);
    }
    chain.reverse();
    Alternation { value, chain }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let maj3 = TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        assert_eq!(alt(&maj3).value, 1);
        assert_eq!(alt(&TruthTable::constant(4, false).unwrap()).value, 0);
        let p4 = TruthTable::from_fn(4, |x| x.count_ones() % 2 == 1).unwrap();
        let a = alt(&p4);
        assert_eq!(a.value, 4);
        assert_eq!(a.chain, vec![0, 0b0001, 0b0011, 0b0111, 0b1111]);
    }

    #[test]
    fn chain_realises_value() {
        for bits in 0..1u64 << 16 {
            let t = TruthTable::from_u64(4, bits).unwrap();
            let a = alt(&t);
            assert_eq!(a.chain.len(), 5);
            assert_eq!(alternations_along(&t, &a.chain), a.value);
            assert!(a
                .chain
                .windows(2)
                .all(|w| (w[1] ^ w[0]).count_ones() == 1 && w[0] & w[1] == w[0]));
        }
    }

    #[test]
    fn arity_zero() {
        let a = alt(&TruthTable::constant(0, true).unwrap());
        assert_eq!(
            a,
            Alternation {
                value: 0,
                chain: vec![0]
            }
        );
    }
}
