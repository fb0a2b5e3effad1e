//! Max terms, min terms and the constructive procedures built on them: the
//! certificate recursion for the extreme inputs `0^n` / `1^n`, and the
//! decision-tree builder that repeatedly queries a minimum certificate.

mod tree;

use serde::{Deserialize, Serialize};

pub use self::tree::DecisionTree;

use crate::caps;
use crate::error::{check_cap, Error, Result};
use crate::measures::{self, alt, sensitivity, sensitivity_at};
use crate::spectra::deg2;
use crate::table::{coords_of, full, Point, Restriction, TruthTable};

/// Complete lists of max terms and min terms, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSet {
    pub max_terms: Vec<Point>,
    pub min_terms: Vec<Point>,
}

/// `eq[x]`: every point in the up-set (or down-set) of `x` has value `v`.
pub(crate) fn uniform_cone(t: &TruthTable, v: bool, upward: bool) -> Vec<bool> {
    let n = t.arity();
    let mut eq = vec![false; t.len()];
    let order: Box<dyn Iterator<Item = usize>> = if upward {
        Box::new((0..t.len()).rev())
    } else {
        Box::new(0..t.len())
    };
    for x in order {
        eq[x] = t.get(x) == v
            && (0..n).all(|i| {
                let bit = 1 << i;
                match (upward, x & bit != 0) {
                    (true, false) => eq[x | bit],
                    (false, true) => eq[x ^ bit],
                    _ => true,
                }
            });
    }
    eq
}

/// Max terms: `u ≠ 1^n`, `f(u) ≠ f(1^n)` and `f` constant strictly above
/// `u`. Min terms dually. Two sweeps, `O(n·2^n)`.
pub fn find_terms(t: &TruthTable) -> TermSet {
    let n = t.arity();
    let top = full(n);
    let up = uniform_cone(t, t.get(top), true);
    let down = uniform_cone(t, t.get(0), false);
    let max_terms = (0..top)
        .filter(|&u| {
            t.get(u) != t.get(top) && (0..n).filter(|i| u >> i & 1 == 0).all(|i| up[u | 1 << i])
        })
        .collect();
    let min_terms = (1..t.len())
        .filter(|&d| {
            t.get(d) != t.get(0) && (0..n).filter(|i| d >> i & 1 == 1).all(|i| down[d ^ 1 << i])
        })
        .collect();
    TermSet {
        max_terms,
        min_terms,
    }
}

/// The chosen max term and the facts checked about it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxTermChoice {
    pub point: Point,
    /// Zero coordinates of the max term.
    pub zeros: Vec<usize>,
    pub sensitivity_at_point: usize,
    /// GF(2) degree of the subfunction above the max term.
    pub deg2_above: usize,
}

/// The lexicographically smallest max term, with `|S₀(u)| ≤ s(f, u)` and
/// `|S₀(u)| = deg₂(f above u)` verified.
pub fn max_term_choice(t: &TruthTable) -> Result<MaxTermChoice> {
    if t.is_constant() {
        return Err(Error::Precondition(
            "constant function has no max term".into(),
        ));
    }
    let u = *find_terms(t)
        .max_terms
        .first()
        .ok_or_else(|| Error::Invariant("non-constant function without a max term".into()))?;
    let zeros = coords_of(full(t.arity()) & !u);
    let s_u = sensitivity_at(t, u);
    let above = t.above(u)?;
    let d_above = deg2(&above);
    if zeros.len() > s_u || zeros.len() != d_above || above.count_ones() % 2 == 0 {
        return Err(Error::Invariant(format!(
            "max term {u}: |S0| = {}, s(f,u) = {s_u}, deg2 above = {d_above}",
            zeros.len()
        )));
    }
    Ok(MaxTermChoice {
        point: u,
        zeros,
        sensitivity_at_point: s_u,
        deg2_above: d_above,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extreme {
    Zero,
    One,
}

/// One round of the certificate recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    /// The max term, lifted to the full cube of the working function (for
    /// the `1^n` side this is the input-complemented function).
    pub max_term: Point,
    /// Coordinates added to the certificate in this round.
    pub added: Vec<usize>,
}

/// A certificate for `0^n` or `1^n` built from max terms, with the bound it
/// must meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeCertificate {
    pub end: Extreme,
    pub coordinates: Vec<usize>,
    pub steps: Vec<CertificateStep>,
    pub alt: usize,
    pub sensitivity: usize,
    pub deg2: usize,
}

impl ExtremeCertificate {
    /// `alt(f) · min(s(f), deg₂(f))`.
    pub fn bound(&self) -> usize {
        self.alt * self.sensitivity.min(self.deg2)
    }

    pub fn within_bound(&self) -> bool {
        self.coordinates.len() <= self.bound()
    }
}

/// Certificate for the all-zero (or all-one) input: pick a max term `u`,
/// take `S₀(u)`, restrict under `u` and repeat until constant. The `1^n`
/// side runs the same recursion on `g(x) = f(!x)`.
pub fn certificate_at_extreme(t: &TruthTable, end: Extreme) -> Result<ExtremeCertificate> {
    check_cap("certificate", t.arity(), caps::CERTIFICATE)?;
    let n = t.arity();
    let work = match end {
        Extreme::Zero => t.clone(),
        Extreme::One => t.flip_all_inputs(),
    };
    let mut fixed = 0usize;
    let mut steps = Vec::new();
    loop {
        let sub = work.restrict(&Restriction::from_masks(n, fixed, 0))?;
        if sub.is_constant() {
            break;
        }
        let free = coords_of(full(n) & !fixed);
        let choice = max_term_choice(&sub)?;
        let lift = |mask: usize| coords_of(mask).iter().fold(0, |m, &k| m | 1 << free[k]);
        let added_mask = lift(full(sub.arity()) & !choice.point);
        steps.push(CertificateStep {
            max_term: lift(choice.point),
            added: coords_of(added_mask),
        });
        fixed |= added_mask;
    }
    let extreme_value = if end == Extreme::One { full(n) } else { 0 };
    let coordinates = coords_of(fixed);
    if !measures::is_certificate(t, extreme_value, &coordinates) {
        return Err(Error::Invariant(format!(
            "constructed set {coordinates:?} does not fix {t} at the {end:?} input"
        )));
    }
    Ok(ExtremeCertificate {
        end,
        coordinates,
        steps,
        alt: alt(t).value,
        sensitivity: sensitivity(t).value,
        deg2: deg2(t),
    })
}

/// Decision tree built by querying a minimum certificate of the current
/// subfunction and recursing on every answer. The minimum certificate is
/// taken at the smallest input attaining `Cmin`, lexicographically smallest
/// set, queried in ascending coordinate order.
pub fn build_dt_via_min_certificates(t: &TruthTable) -> Result<DecisionTree> {
    check_cap("tree builder", t.arity(), caps::TREE_BUILDER)?;
    let coords: Vec<usize> = (0..t.arity()).collect();
    build_rounds(t, &coords)
}

fn build_rounds(g: &TruthTable, coords: &[usize]) -> Result<DecisionTree> {
    if let Some(v) = g.constant_value() {
        return Ok(DecisionTree::Leaf(v));
    }
    let cert = measures::cmin(g)?;
    expand(g, coords, &cert.coordinates, Restriction::free(g.arity()))
}

fn expand(
    g: &TruthTable,
    coords: &[usize],
    queue: &[usize],
    answered: Restriction,
) -> Result<DecisionTree> {
    match queue.split_first() {
        None => {
            let sub = g.restrict(&answered)?;
            let sub_coords: Vec<usize> =
                answered.free_coords().iter().map(|&k| coords[k]).collect();
            build_rounds(&sub, &sub_coords)
        }
        Some((&var, rest)) => Ok(DecisionTree::Query {
            var: coords[var],
            zero: Box::new(expand(g, coords, rest, answered.clone().with(var, false)?)?),
            one: Box::new(expand(g, coords, rest, answered.with(var, true)?)?),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    /// Definitional max/min terms by scanning up-sets and down-sets.
    fn terms_brute(f: &TruthTable) -> TermSet {
        let top = full(f.arity());
        let max_terms = (0..top)
            .filter(|&u| {
                f.get(u) != f.get(top)
                    && (0..f.len()).all(|x| x == u || x & u != u || f.get(x) == f.get(top))
            })
            .collect();
        let min_terms = (1..f.len())
            .filter(|&d| {
                f.get(d) != f.get(0)
                    && (0..f.len()).all(|x| x == d || x & d != x || f.get(x) == f.get(0))
            })
            .collect();
        TermSet {
            max_terms,
            min_terms,
        }
    }

    #[test]
    fn term_examples() {
        assert_eq!(find_terms(&t("2:6")).max_terms, vec![0b01, 0b10]);
        assert!(find_terms(&t("2:0")).max_terms.is_empty());
        let or3 = TruthTable::from_fn(3, |x| x != 0).unwrap();
        assert_eq!(find_terms(&or3).min_terms, vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn terms_match_brute_force() {
        for n in 0..=4 {
            for bits in 0..1u64 << (1 << n) {
                let f = TruthTable::from_u64(n, bits).unwrap();
                assert_eq!(find_terms(&f), terms_brute(&f), "{f}");
            }
        }
    }

    #[test]
    fn max_term_choice_examples() {
        assert_eq!(max_term_choice(&t("2:6")).unwrap().point, 0b01);
        assert_eq!(max_term_choice(&t("2:E")).unwrap().point, 0b00);
        let and3 = TruthTable::from_fn(3, |x| x == 7).unwrap();
        assert_eq!(max_term_choice(&and3).unwrap().point, 0b011);
        assert!(matches!(
            max_term_choice(&t("2:F")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn extreme_certificate_examples() {
        let x = certificate_at_extreme(&t("2:6"), Extreme::Zero).unwrap();
        assert_eq!((x.alt, x.deg2), (2, 1));
        assert!(x.coordinates.len() <= 2 && x.within_bound());
        let m = certificate_at_extreme(&t("3:E8"), Extreme::Zero).unwrap();
        assert_eq!(m.coordinates.len(), 2);
        assert!(m.within_bound());
        let c = certificate_at_extreme(&t("3:FF"), Extreme::One).unwrap();
        assert!(c.coordinates.is_empty() && c.steps.is_empty());
    }

    #[test]
    fn one_side_uses_complemented_inputs() {
        // OR_3 at 111: any single coordinate certifies; AND_3 at 111 needs all
        let or3 = TruthTable::from_fn(3, |x| x != 0).unwrap();
        assert_eq!(
            certificate_at_extreme(&or3, Extreme::One)
                .unwrap()
                .coordinates
                .len(),
            1
        );
        let and3 = TruthTable::from_fn(3, |x| x == 7).unwrap();
        assert_eq!(
            certificate_at_extreme(&and3, Extreme::One)
                .unwrap()
                .coordinates,
            vec![0, 1, 2]
        );
    }

    #[test]
    fn min_certificate_tree_examples() {
        let or3 = TruthTable::from_fn(3, |x| x != 0).unwrap();
        let tree = build_dt_via_min_certificates(&or3).unwrap();
        assert!(tree.computes(&or3));
        assert!(tree.depth() <= 3);
        assert_eq!(
            build_dt_via_min_certificates(&t("3:00")).unwrap(),
            DecisionTree::Leaf(false)
        );
        let x = build_dt_via_min_certificates(&t("2:6")).unwrap();
        assert!(x.computes(&t("2:6")));
        assert_eq!(x.depth(), 2);
    }

    #[test]
    fn tree_json_is_nested() {
        let tree = build_dt_via_min_certificates(&t("1:2")).unwrap();
        assert_eq!(
            serde_json::to_string(&tree).unwrap(),
            r#"{"query":{"var":0,"zero":{"leaf":false},"one":{"leaf":true}}}"#
        );
    }
}
