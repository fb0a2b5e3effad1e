use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{check_cap, Result};
use crate::table::{coords_of, full, Point, Restriction, TruthTable};

/// A certificate: fixing `coordinates` to their values at `witness` makes
/// the function constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub value: usize,
    pub witness: Point,
    pub coordinates: Vec<usize>,
}

fn check_cert_cap(t: &TruthTable) -> Result<()> {
    check_cap("certificate", t.arity(), caps::CERTIFICATE)
}

/// Masks `F` of coordinates that may be left free around `x` while keeping
/// the function constant: `ok[F]` iff `f(x ^ z) = f(x)` for all `z ⊆ F`.
fn free_sets(t: &TruthTable, x: Point) -> Vec<bool> {
    let fx = t.get(x);
    let mut ok: Vec<bool> = (0..t.len()).map(|z| t.get(x ^ z) == fx).collect();
    for i in 0..t.arity() {
        let bit = 1 << i;
        for f in 0..t.len() {
            if f & bit != 0 && !ok[f ^ bit] {
                ok[f] = false;
            }
        }
    }
    ok
}

fn min_certificate_mask(t: &TruthTable, x: Point) -> usize {
    let ok = free_sets(t, x);
    let all = full(t.arity());
    let best_free = (0..t.len())
        .filter(|&f| ok[f])
        .map(|f| f.count_ones())
        .max()
        .unwrap_or(0);
    (0..t.len())
        .filter(|&f| ok[f] && f.count_ones() == best_free)
        .map(|f| all & !f)
        .min_by_key(|&s| coords_of(s))
        .unwrap_or(0)
}

fn cert_size(t: &TruthTable, x: Point) -> usize {
    let ok = free_sets(t, x);
    let best_free = (0..t.len())
        .filter(|&f| ok[f])
        .map(|f| f.count_ones() as usize)
        .max()
        .unwrap_or(0);
    t.arity() - best_free
}

/// `C(f, x)` with the lexicographically smallest minimum certificate.
pub fn certificate_at(t: &TruthTable, x: Point) -> Result<Certificate> {
    check_cert_cap(t)?;
    let s = min_certificate_mask(t, x);
    Ok(Certificate {
        value: s.count_ones() as usize,
        witness: x,
        coordinates: coords_of(s),
    })
}

/// `C(f, x)` for every input.
pub fn certificate_profile(t: &TruthTable) -> Result<Vec<usize>> {
    check_cert_cap(t)?;
    Ok((0..t.len()).map(|x| cert_size(t, x)).collect())
}

/// `C(f)`: maximum over inputs, smallest maximising input.
pub fn certificate(t: &TruthTable) -> Result<Certificate> {
    let profile = certificate_profile(t)?;
    let x = argbest(&profile, |a, b| a > b);
    certificate_at(t, x)
}

/// `Cmin(f)`: minimum over inputs, smallest minimising input.
pub fn cmin(t: &TruthTable) -> Result<Certificate> {
    let profile = certificate_profile(t)?;
    let x = argbest(&profile, |a, b| a < b);
    certificate_at(t, x)
}

pub fn cmin_value(t: &TruthTable) -> Result<usize> {
    check_cert_cap(t)?;
    Ok((0..t.len()).map(|x| cert_size(t, x)).min().unwrap_or(0))
}

fn argbest(values: &[usize], better: impl Fn(usize, usize) -> bool) -> Point {
    let mut idx = 0;
    for (x, &v) in values.iter().enumerate() {
        if better(v, values[idx]) {
            idx = x;
        }
    }
    idx
}

/// True when fixing `coordinates` to their values in `x` makes `t` constant.
pub fn is_certificate(t: &TruthTable, x: Point, coordinates: &[usize]) -> bool {
    let mask = coordinates.iter().fold(0, |m, &i| m | 1 << i);
    let fx = t.get(x);
    (0..t.len()).all(|y| (y ^ x) & mask != 0 || t.get(y) == fx)
}

/// `Cmin` maximised over every restriction, with the restriction attaining
/// it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CminClosure {
    pub value: usize,
    pub restriction: Restriction,
}

/// Decodes restriction number `code` in base 3: digit `i` is 0 (free),
/// 1 (fixed to 0) or 2 (fixed to 1).
fn restriction_from_code(n: usize, mut code: usize) -> Restriction {
    let mut a = Vec::with_capacity(n);
    for _ in 0..n {
        a.push(match code % 3 {
            0 => None,
            1 => Some(false),
            _ => Some(true),
        });
        code /= 3;
    }
    Restriction::from_assignments(a)
}

/// `Cmin^cl(f)`. The witness is the first restriction in base-3 order
/// attaining the maximum; the empty restriction comes first.
pub fn cmin_closure(t: &TruthTable) -> Result<CminClosure> {
    check_cap("cmin closure", t.arity(), caps::CMIN_CLOSURE)?;
    let n = t.arity();
    let mut best = CminClosure {
        value: cmin_value(t)?,
        restriction: Restriction::free(n),
    };
    for code in 1..3usize.pow(n as u32) {
        let r = restriction_from_code(n, code);
        if n - r.fixed_count() <= best.value {
            continue;
        }
        let v = cmin_value(&t.restrict(&r)?)?;
        if v > best.value {
            best = CminClosure {
                value: v,
                restriction: r,
            };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maj3() -> TruthTable {
        TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let c = certificate(&maj3()).unwrap();
        assert_eq!(c.value, 2);
        assert_eq!((c.witness, c.coordinates.clone()), (0, vec![0, 1]));
        let or2 = TruthTable::from_fn(2, |x| x != 0).unwrap();
        let m = cmin(&or2).unwrap();
        assert_eq!((m.value, m.witness, m.coordinates), (1, 1, vec![0]));
        let c0 = TruthTable::constant(2, false).unwrap();
        for x in 0..4 {
            assert_eq!(certificate_at(&c0, x).unwrap().value, 0);
        }
    }

    #[test]
    fn certificates_verify() {
        for bits in 0..1u64 << 8 {
            let t = TruthTable::from_u64(3, bits).unwrap();
            for x in 0..8 {
                let c = certificate_at(&t, x).unwrap();
                assert!(is_certificate(&t, x, &c.coordinates));
            }
        }
    }

    #[test]
    fn closure_examples() {
        let or3 = TruthTable::from_fn(3, |x| x != 0).unwrap();
        assert_eq!(cmin_closure(&or3).unwrap().value, 1);
        let xor2: TruthTable = "2:6".parse().unwrap();
        let cl = cmin_closure(&xor2).unwrap();
        assert_eq!(cl.value, 2);
        assert_eq!(cl.restriction, Restriction::free(2));
        assert_eq!(
            cmin_closure(&TruthTable::constant(3, false).unwrap())
                .unwrap()
                .value,
            0
        );
    }

    #[test]
    fn closure_witness_is_a_subfunction_attaining_value() {
        // AND(x0, XOR(x1, x2)): Cmin = 1 at x0 = 0, but fixing x0 = 1 leaves XOR
        let t = TruthTable::from_fn(3, |x| x & 1 == 1 && (x >> 1).count_ones() == 1).unwrap();
        assert_eq!(cmin_value(&t).unwrap(), 1);
        let cl = cmin_closure(&t).unwrap();
        assert_eq!(cl.value, 2);
        let sub = t.restrict(&cl.restriction).unwrap();
        assert_eq!(cmin_value(&sub).unwrap(), 2);
    }

    #[test]
    fn caps() {
        assert!(certificate(&TruthTable::constant(13, true).unwrap())
            .unwrap_err()
            .is_cap());
        assert!(cmin_closure(&TruthTable::constant(9, true).unwrap())
            .unwrap_err()
            .is_cap());
    }
}
