//! Exact polynomial representations of a truth table.
//!
//! Three expansions are computed with in-place butterflies over the subset
//! lattice, all in exact integer arithmetic:
//!
//! * Möbius: `f(x) = Σ_{S ⊆ supp(x)} α(S)` over the `{0,1}` domain.
//! * Fourier, scaled: `2^n · f̂(S) = Σ_x f(x) (-1)^{|x ∧ S|}`. Input bit `b`
//!   maps to the character value `(-1)^b`, so `0 ↦ +1`. The range stays
//!   `{0,1}`.
//! * ANF: the Möbius transform reduced modulo 2.
//!
//! Coefficient vectors are indexed by subsets in the same little-endian
//! encoding as points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::table::{Point, TruthTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Mobius,
    FourierScaled,
    Anf,
}

/// Exact coefficient vector of length `2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub arity: usize,
    pub coeffs: Vec<i64>,
}

impl Spectrum {
    /// Number of nonzero coefficients.
    pub fn sparsity(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Largest `|S|` with a nonzero coefficient; 0 when all vanish.
    pub fn degree(&self) -> usize {
        self.nonzero()
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Point, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, &c)| (s, c))
    }

    /// Rebuilds the truth table from the coefficients. `None` if some
    /// reconstructed value is not a bit.
    pub fn reconstruct(&self) -> Option<TruthTable> {
        let mut vals = self.coeffs.clone();
        match self.kind {
            SpectrumKind::Mobius => subset_sums(&mut vals),
            SpectrumKind::Anf => {
                subset_sums(&mut vals);
                vals.iter_mut().for_each(|v| *v &= 1);
            }
            SpectrumKind::FourierScaled => {
                walsh_hadamard(&mut vals);
                // applying the transform twice multiplies by 2^n
                let scale = 1i64 << self.arity;
                for v in vals.iter_mut() {
                    if *v % scale != 0 {
                        return None;
                    }
                    *v /= scale;
                }
            }
        }
        if vals.iter().any(|&v| v != 0 && v != 1) {
            return None;
        }
        TruthTable::from_fn(self.arity, |x| vals[x] == 1).ok()
    }
}

/// Sparse JSON form: `{kind, arity, coeffs: {subset: value}}`.
#[derive(Serialize, Deserialize)]
struct SparseSpectrum {
    kind: SpectrumKind,
    arity: usize,
    coeffs: BTreeMap<usize, i64>,
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SparseSpectrum {
            kind: self.kind,
            arity: self.arity,
            coeffs: self.nonzero().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let sparse = SparseSpectrum::deserialize(d)?;
        if sparse.arity > crate::table::MAX_ARITY {
            return Err(serde::de::Error::custom("arity above cap"));
        }
        let mut coeffs = vec![0; 1 << sparse.arity];
        for (s, c) in sparse.coeffs {
            *coeffs
                .get_mut(s)
                .ok_or_else(|| serde::de::Error::custom("subset index out of range"))? = c;
        }
        Ok(Spectrum {
            kind: sparse.kind,
            arity: sparse.arity,
            coeffs,
        })
    }
}

fn bit_vector(t: &TruthTable) -> Vec<i64> {
    (0..t.len()).map(|x| t.get(x) as i64).collect()
}

/// `a[S] <- Σ_{T ⊆ S} a[T]`.
pub(crate) fn subset_sums(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (l, u) in lo.iter().zip(hi.iter_mut()) {
                *u += *l;
            }
        }
        h *= 2;
    }
}

/// Inverse of [`subset_sums`].
pub(crate) fn subset_differences(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (l, u) in lo.iter().zip(hi.iter_mut()) {
                *u -= *l;
            }
        }
        h *= 2;
    }
}

/// Unnormalised Walsh–Hadamard transform.
pub(crate) fn walsh_hadamard(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (l, u) in lo.iter_mut().zip(hi.iter_mut()) {
                let (p, q) = (*l, *u);
                *l = p + q;
                *u = p - q;
            }
        }
        h *= 2;
    }
}

pub fn mobius_transform(t: &TruthTable) -> Spectrum {
    let mut coeffs = bit_vector(t);
    subset_differences(&mut coeffs);
    Spectrum {
        kind: SpectrumKind::Mobius,
        arity: t.arity(),
        coeffs,
    }
}

/// Möbius sparsity `mono(f)`.
pub fn mono_sparsity(t: &TruthTable) -> usize {
    mobius_transform(t).sparsity()
}

/// Fourier coefficients scaled by `2^n`.
pub fn fourier_transform(t: &TruthTable) -> Spectrum {
    let mut coeffs = bit_vector(t);
    walsh_hadamard(&mut coeffs);
    Spectrum {
        kind: SpectrumKind::FourierScaled,
        arity: t.arity(),
        coeffs,
    }
}

/// Fourier sparsity `‖f̂‖₀`.
pub fn fourier_sparsity(t: &TruthTable) -> usize {
    fourier_transform(t).sparsity()
}

/// Algebraic normal form over GF(2).
pub fn anf(t: &TruthTable) -> Spectrum {
    let mut coeffs = bit_vector(t);
    let mut h = 1;
    while h < coeffs.len() {
        for block in coeffs.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (l, u) in lo.iter().zip(hi.iter_mut()) {
                *u ^= *l;
            }
        }
        h *= 2;
    }
    Spectrum {
        kind: SpectrumKind::Anf,
        arity: t.arity(),
        coeffs,
    }
}

/// GF(2) degree; constants have degree 0.
pub fn deg2(t: &TruthTable) -> usize {
    anf(t).degree()
}

/// Sparsities and degree in one record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectraSummary {
    pub mono_sparsity: usize,
    pub fourier_sparsity: usize,
    pub deg2: usize,
}

impl SpectraSummary {
    pub fn compute(t: &TruthTable) -> Self {
        SpectraSummary {
            mono_sparsity: mono_sparsity(t),
            fourier_sparsity: fourier_sparsity(t),
            deg2: deg2(t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maj3() -> TruthTable {
        TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap()
    }

    fn or(n: usize) -> TruthTable {
        TruthTable::from_fn(n, |x| x != 0).unwrap()
    }

    fn parity(n: usize) -> TruthTable {
        TruthTable::from_fn(n, |x| x.count_ones() % 2 == 1).unwrap()
    }

    /// Direct definition: 2^n f̂(S) = Σ_x f(x)(-1)^{|x∧S|}.
    fn fourier_brute(t: &TruthTable) -> Vec<i64> {
        (0..t.len())
            .map(|s| {
                (0..t.len())
                    .filter(|&x| t.get(x))
                    .map(|x| if (x & s).count_ones() % 2 == 0 { 1 } else { -1 })
                    .sum()
            })
            .collect()
    }

    /// α(S) = Σ_{T ⊆ S} (-1)^{|S \ T|} f(T).
    fn mobius_brute(t: &TruthTable) -> Vec<i64> {
        (0..t.len())
            .map(|s| {
                (0..t.len())
                    .filter(|&x| x & s == x && t.get(x))
                    .map(|x| if (s ^ x).count_ones() % 2 == 0 { 1 } else { -1 })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn mobius_examples() {
        for n in 1..=4 {
            assert_eq!(mono_sparsity(&or(n)), (1 << n) - 1);
        }
        assert_eq!(mono_sparsity(&TruthTable::constant(3, false).unwrap()), 0);
        let m = mobius_transform(&maj3());
        let nz: Vec<_> = m.nonzero().collect();
        assert_eq!(nz, vec![(0b011, 1), (0b101, 1), (0b110, 1), (0b111, -2)]);
    }

    #[test]
    fn fourier_examples() {
        assert_eq!(fourier_sparsity(&parity(2)), 2);
        assert_eq!(fourier_sparsity(&TruthTable::constant(3, true).unwrap()), 1);
        let f = fourier_transform(&maj3());
        let support: Vec<_> = f.nonzero().map(|(s, _)| s).collect();
        assert_eq!(support, vec![0, 1, 2, 4, 7]);
        assert_eq!(f.coeffs, fourier_brute(&maj3()));
    }

    #[test]
    fn anf_examples() {
        for n in 1..=4 {
            assert_eq!(deg2(&parity(n)), 1);
            assert_eq!(
                deg2(&TruthTable::from_fn(n, |x| x == (1 << n) - 1).unwrap()),
                n
            );
        }
        assert_eq!(deg2(&maj3()), 2);
        let a: Vec<_> = anf(&maj3()).nonzero().map(|(s, _)| s).collect();
        assert_eq!(a, vec![0b011, 0b101, 0b110]);
        assert_eq!(deg2(&TruthTable::constant(2, true).unwrap()), 0);
    }

    #[test]
    fn transforms_match_definitions_exhaustively() {
        for n in 0..=3 {
            for bits in 0..1u64 << (1 << n) {
                let t = TruthTable::from_u64(n, bits).unwrap();
                assert_eq!(fourier_transform(&t).coeffs, fourier_brute(&t));
                assert_eq!(mobius_transform(&t).coeffs, mobius_brute(&t));
                let a = anf(&t);
                assert_eq!(
                    a.coeffs,
                    mobius_brute(&t)
                        .iter()
                        .map(|c| c.rem_euclid(2))
                        .collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn reconstruction_is_exact() {
        for bits in 0..1u64 << 16 {
            let t = TruthTable::from_u64(4, bits).unwrap();
            for s in [mobius_transform(&t), fourier_transform(&t), anf(&t)] {
                assert_eq!(s.reconstruct().as_ref(), Some(&t));
            }
        }
    }

    #[test]
    fn sparse_json_round_trip() {
        let f = fourier_transform(&maj3());
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"fourier_scaled","arity":3,"coeffs":{"0":4,"1":-2,"2":-2,"4":-2,"7":2}}"#
        );
        let back: Spectrum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
